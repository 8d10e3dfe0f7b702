#include "lmk/text.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <optional>

namespace lmk {

namespace {

std::string describe(const std::vector<std::string>& expected,
                     const std::string& found) {
  std::string s = "expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) s += (i + 1 == expected.size()) ? " or " : ", ";
    s += expected[i];
  }
  return s + ", found " + found;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column,
                       std::vector<std::string> expected, std::string found)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " +
                         describe(expected, found)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { Lambda, Dot, LParen, RParen, Arrow, Word, Bad, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::string show(const Token& t) {
  switch (t.kind) {
    case Tok::End:
      return "end of input";
    case Tok::Word:
      return "'" + t.text + "'";
    default:
      return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  Lexer(std::string_view src, std::size_t line, std::size_t column)
      : src_(src), line_(line), column_(column) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      const std::size_t l = line_, c = column_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", l, c});
        return out;
      }
      const char ch = src_[pos_];
      if (ch == '\\') {
        advance(1);
        out.push_back({Tok::Lambda, "\\", l, c});
      } else if (src_.substr(pos_, 2) == "\xCE\xBB") {
        advance(2);
        out.push_back({Tok::Lambda, "λ", l, c});
      } else if (ch == '.') {
        advance(1);
        out.push_back({Tok::Dot, ".", l, c});
      } else if (ch == '(') {
        advance(1);
        out.push_back({Tok::LParen, "(", l, c});
      } else if (ch == ')') {
        advance(1);
        out.push_back({Tok::RParen, ")", l, c});
      } else if (src_.substr(pos_, 2) == "->") {
        advance(2);
        out.push_back({Tok::Arrow, "->", l, c});
      } else if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t end = pos_;
        while (end < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[end])) ||
                src_[end] == '_'))
          ++end;
        std::string w(src_.substr(pos_, end - pos_));
        advance(end - pos_);
        out.push_back({Tok::Word, std::move(w), l, c});
      } else {
        std::size_t len = 1;
        // Keep a whole UTF-8 sequence together.
        while (pos_ + len < src_.size() &&
               (static_cast<unsigned char>(src_[pos_ + len]) & 0xC0) == 0x80)
          ++len;
        std::string w(src_.substr(pos_, len));
        advance(len);
        out.push_back({Tok::Bad, std::move(w), l, c});
      }
    }
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      advance(1);
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
      const auto b = static_cast<unsigned char>(src_[pos_]);
      if (b == '\n') {
        ++line_;
        column_ = 1;
      } else if ((b & 0xC0) != 0x80) {
        ++column_;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t column_;
};

std::optional<Var> as_var(const std::string& w) {
  if (w.size() < 2 || w[0] != 'v') return std::nullopt;
  std::uint32_t idx = 0;
  auto [p, ec] = std::from_chars(w.data() + 1, w.data() + w.size(), idx);
  if (ec != std::errc{} || p != w.data() + w.size()) return std::nullopt;
  return Var(idx);
}

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw ParseError(t.line, t.column, std::move(expected), show(t));
  }

  void expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) fail({what});
    next();
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail({"end of input"});
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

template <ConstAlphabet C>
class TermParser {
 public:
  explicit TermParser(TokenStream& ts) : ts_(ts) {}

  Term<C> term() {
    if (ts_.peek().kind == Tok::Lambda) return lambda();
    return application();
  }

 private:
  std::vector<std::string> atom_starts() const {
    std::vector<std::string> e{"variable"};
    if (!Alphabet<C>::symbols().empty()) e.push_back("constant");
    e.push_back("'('");
    return e;
  }

  Term<C> lambda() {
    ts_.next();
    const Token& t = ts_.peek();
    std::optional<Var> x;
    if (t.kind == Tok::Word) x = as_var(t.text);
    if (!x) ts_.fail({"variable"});
    ts_.next();
    ts_.expect(Tok::Dot, "'.'");
    return Term<C>::abs(*x, term());
  }

  std::optional<Term<C>> try_atom() {
    const Token& t = ts_.peek();
    if (t.kind == Tok::LParen) {
      ts_.next();
      ++depth_;
      Term<C> inner = term();
      ts_.expect(Tok::RParen, "')'");
      --depth_;
      return inner;
    }
    if (t.kind != Tok::Word) return std::nullopt;
    if (auto x = as_var(t.text)) {
      ts_.next();
      return Term<C>::variable(*x);
    }
    for (C c : Alphabet<C>::symbols()) {
      if (Alphabet<C>::spelling(c) == t.text) {
        ts_.next();
        return Term<C>::constant(c);
      }
    }
    return std::nullopt;
  }

  Term<C> application() {
    auto head = try_atom();
    if (!head) {
      auto e = atom_starts();
      e.push_back("lambda");
      ts_.fail(std::move(e));
    }
    Term<C> acc = std::move(*head);
    for (;;) {
      const Token& t = ts_.peek();
      if (t.kind == Tok::End || t.kind == Tok::RParen) return acc;
      auto a = try_atom();
      if (!a) {
        auto e = atom_starts();
        e.push_back(depth_ > 0 ? "')'" : "end of input");
        ts_.fail(std::move(e));
      }
      acc = Term<C>::app(std::move(acc), std::move(*a));
    }
  }

  TokenStream& ts_;
  int depth_ = 0;
};

SimpleType parse_type_tokens(TokenStream& ts) {
  SimpleType dom = SimpleType::base();
  const Token& t = ts.peek();
  if (t.kind == Tok::LParen) {
    ts.next();
    dom = parse_type_tokens(ts);
    ts.expect(Tok::RParen, "')'");
  } else if (t.kind == Tok::Word && t.text == "nat") {
    ts.next();
  } else {
    ts.fail({"'nat'", "'('"});
  }
  if (ts.peek().kind == Tok::Arrow) {
    ts.next();
    return SimpleType::arrow(std::move(dom), parse_type_tokens(ts));
  }
  return dom;
}

template <ConstAlphabet C>
Term<C> parse_term_at(std::string_view text, std::size_t line,
                      std::size_t column) {
  TokenStream ts(Lexer(text, line, column).run());
  Term<C> t = TermParser<C>(ts).term();
  ts.expect_end();
  return t;
}

SimpleType parse_type_at(std::string_view text, std::size_t column) {
  TokenStream ts(Lexer(text, 1, column).run());
  SimpleType t = parse_type_tokens(ts);
  ts.expect_end();
  return t;
}

// Splits on commas; each piece keeps its starting column.
std::vector<std::pair<std::string_view, std::size_t>> split_commas(
    std::string_view text) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == ',') {
      out.emplace_back(text.substr(start, i - start), start + 1);
      start = i + 1;
    }
  }
  return out;
}

bool blank(std::string_view s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

Var parse_binding_var(std::string_view name, std::size_t column) {
  std::size_t lead = 0;
  while (lead < name.size() &&
         std::isspace(static_cast<unsigned char>(name[lead])))
    ++lead;
  std::size_t end = name.size();
  while (end > lead && std::isspace(static_cast<unsigned char>(name[end - 1])))
    --end;
  auto x = as_var(std::string(name.substr(lead, end - lead)));
  if (!x)
    throw ParseError(1, column + lead, {"variable"},
                     "'" + std::string(name.substr(lead, end - lead)) + "'");
  return *x;
}

}  // namespace

template <ConstAlphabet C>
Term<C> parse_term(std::string_view text) {
  return parse_term_at<C>(text, 1, 1);
}

SimpleType parse_type(std::string_view text) { return parse_type_at(text, 1); }

Context parse_context(std::string_view text) {
  Context ctx;
  if (blank(text)) return ctx;
  std::vector<Context::Binding> order;
  for (auto [piece, col] : split_commas(text)) {
    auto colon = piece.find(':');
    if (colon == std::string_view::npos)
      throw ParseError(1, col + piece.size(), {"':'"}, "end of binding");
    Var x = parse_binding_var(piece.substr(0, colon), col);
    order.emplace_back(x, parse_type_at(piece.substr(colon + 1), col + colon + 1));
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    ctx = ctx.extend(it->first, it->second);
  return ctx;
}

template <ConstAlphabet C>
Subst<C> parse_subst(std::string_view text) {
  Subst<C> sigma;
  if (blank(text)) return sigma;
  for (auto [piece, col] : split_commas(text)) {
    auto assign = piece.find(":=");
    if (assign == std::string_view::npos)
      throw ParseError(1, col + piece.size(), {"':='"}, "end of binding");
    Var x = parse_binding_var(piece.substr(0, assign), col);
    sigma = sigma.update(
        x, parse_term_at<C>(piece.substr(assign + 2), 1, col + assign + 2));
  }
  return sigma;
}

namespace {

template <ConstAlphabet C>
void print_into(const Term<C>& m, std::string& out) {
  using K = typename Term<C>::Kind;
  switch (m.kind()) {
    case K::Const:
      out += Alphabet<C>::spelling(m.symbol());
      return;
    case K::Var:
      out += 'v';
      out += std::to_string(m.var().index);
      return;
    case K::Abs:
      out += "\\v";
      out += std::to_string(m.var().index);
      out += ". ";
      print_into(m.body(), out);
      return;
    case K::App: {
      const bool paren_fun = m.fun().is_abs();
      if (paren_fun) out += '(';
      print_into(m.fun(), out);
      if (paren_fun) out += ')';
      out += ' ';
      const bool paren_arg = m.arg().is_abs() || m.arg().is_app();
      if (paren_arg) out += '(';
      print_into(m.arg(), out);
      if (paren_arg) out += ')';
      return;
    }
  }
}

}  // namespace

template <ConstAlphabet C>
std::string print_term(const Term<C>& m) {
  std::string out;
  print_into(m, out);
  return out;
}

template <ConstAlphabet C>
std::string print_subst(const Subst<C>& sigma) {
  std::string out = "[";
  bool first = true;
  for (const auto& [x, t] : sigma.overrides()) {
    if (!first) out += ", ";
    first = false;
    out += to_string(x) + " := " + print_term(t);
  }
  return out + "]";
}

#define LMK_INSTANTIATE(C)                                   \
  template Term<C> parse_term<C>(std::string_view);          \
  template Subst<C> parse_subst<C>(std::string_view);        \
  template std::string print_term<C>(const Term<C>&);        \
  template std::string print_subst<C>(const Subst<C>&);

LMK_INSTANTIATE(EmptyConst)
LMK_INSTANTIATE(TConst)

#undef LMK_INSTANTIATE

}  // namespace lmk
