#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "isd/core.hpp"

/*
 * Textual syntax for interactions (".isd" documents) and traces.
 *
 *   doc    := header? expr
 *   header := "lifelines" ident+ ";" "messages" ident+ ";"
 *   expr   := "0" | action | binop "(" expr ("," expr)+ ")" | loopop "(" expr ")"
 *   binop  := "strict" | "seq" | "par" | "alt"
 *   loopop := "loopX" | "loopH" | "loopS" | "loopP"
 *   action := ident ("!" | "?") ident
 *
 * Whitespace is insignificant. N-ary operator calls nest to the right:
 * seq(a,b,c) is seq(a,seq(b,c)). Traces are actions joined by ".", with the
 * literal "eps" for the empty trace.
 */
namespace isd {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, std::string message,
               std::vector<std::string> expected = {});

    /// 1-based position of the offending token.
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
    std::vector<std::string> expected_;
};

struct SourceDocument {
    Interaction interaction;
    /// The declared header, or the alphabets inferred from the body.
    Signature signature;
    bool declared = false;
};

/// Throws ParseError on lexical or syntactic errors, and when the body uses a
/// lifeline or message missing from an explicit header.
SourceDocument parse_interaction(std::string_view text);

/// Canonical binary form, e.g. "strict(l1!m1,l3?m1)"; "0" for the empty
/// interaction. Parsing the result yields the same term.
std::string render_interaction(const Interaction& i);

Trace parse_trace(std::string_view text);

/// One trace per non-blank line. Error positions refer to the whole text.
std::vector<Trace> parse_trace_lines(std::string_view text);

} // namespace isd
