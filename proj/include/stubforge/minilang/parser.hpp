#pragma once

#include <string_view>

#include "stubforge/minilang/ast.hpp"

namespace stubforge::ml {

// Syntax-only entry points. The results still need the checker (see minilang.hpp) before they
// can be executed.

Program parse_program_syntax(std::string_view source);
TestCase parse_test_syntax(std::string_view source, InstructionId id_base);
/// An arrange block: `let`, `when` and `mock T` are allowed here.
StubBlock parse_stub_syntax(std::string_view source, InstructionId id_base);

}  // namespace stubforge::ml
