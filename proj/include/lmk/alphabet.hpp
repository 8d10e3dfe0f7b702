#pragma once

#include <array>
#include <concepts>
#include <span>
#include <string_view>

namespace lmk {

// Constant alphabets. A kernel instantiation fixes one of these at compile
// time; every term, rule set and signature is parameterised by it.

/// No constants at all: pure lambda terms.
enum class EmptyConst : unsigned char {};

/// Constants of Goedel's System T.
enum class TConst : unsigned char { Zero, Succ, Rec };

template <class C>
struct Alphabet;

template <>
struct Alphabet<EmptyConst> {
  static constexpr std::string_view name = "pure";
  static std::span<const EmptyConst> symbols() noexcept { return {}; }
  static std::string_view spelling(EmptyConst) noexcept { return "<none>"; }
};

template <>
struct Alphabet<TConst> {
  static constexpr std::string_view name = "t";
  static constexpr std::array<TConst, 3> all{TConst::Zero, TConst::Succ,
                                             TConst::Rec};
  static std::span<const TConst> symbols() noexcept { return all; }
  static std::string_view spelling(TConst c) noexcept {
    switch (c) {
      case TConst::Zero:
        return "0";
      case TConst::Succ:
        return "S";
      case TConst::Rec:
        return "Rec";
    }
    return "<bad>";
  }
};

template <class C>
concept ConstAlphabet = std::totally_ordered<C> && requires(C c) {
  { Alphabet<C>::symbols() } -> std::convertible_to<std::span<const C>>;
  { Alphabet<C>::spelling(c) } -> std::convertible_to<std::string_view>;
};

}  // namespace lmk
