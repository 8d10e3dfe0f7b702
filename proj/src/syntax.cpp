#include "lmk/syntax.hpp"

namespace lmk {

std::string to_string(Var x) { return "v" + std::to_string(x.index); }

}  // namespace lmk
