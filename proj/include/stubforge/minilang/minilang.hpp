#pragma once

#include <string_view>

#include "stubforge/minilang/ast.hpp"
#include "stubforge/minilang/errors.hpp"

namespace stubforge::ml {

/// Parses and type-checks a CUT compilation unit. Throws SyntaxError or TypeError.
Program parse(std::string_view source);

/// Parses and checks a test case against `program`. Instruction ids continue after the
/// program's, so program and test ids never collide.
TestCase parse_test(const Program& program, std::string_view source);

/// Parses and checks an arrange block for insertion at `test`'s stub site.
StubBlock parse_stub_block(const Program& program, const TestCase& test, std::string_view source);

void check_program(Program& program);
void check_test(const Program& program, TestCase& test);
void check_stub_block(const Program& program, const TestCase& test, StubBlock& block);

/// The zero value an unstubbed call of this return type produces.
Value default_value(const Type& type);

}  // namespace stubforge::ml
