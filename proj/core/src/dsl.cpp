#include "isd/dsl.hpp"

#include <optional>
#include <unordered_set>

namespace isd {

namespace {

std::string describe_expected(const std::vector<std::string>& expected) {
    std::string out;
    for (std::size_t k = 0; k < expected.size(); ++k) {
        if (k > 0) {
            out += k + 1 == expected.size() ? " or " : ", ";
        }
        out += expected[k];
    }
    return out;
}

std::string format_error(std::size_t line, std::size_t column, const std::string& message,
                         const std::vector<std::string>& expected) {
    std::string out = std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    if (!expected.empty()) {
        out += " (expected " + describe_expected(expected) + ")";
    }
    return out;
}

bool is_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

bool is_ident_char(char c) { return is_letter(c) || (c >= '0' && c <= '9') || c == '_'; }

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

enum class Tok { Ident, Zero, Bang, Query, LParen, RParen, Comma, Semicolon, End };

struct Token {
    Tok type = Tok::End;
    std::string_view text;
    std::size_t line = 1;
    std::size_t column = 1;
};

std::string describe(const Token& t) {
    switch (t.type) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier '" + std::string(t.text) + "'";
    default: return "'" + std::string(t.text) + "'";
    }
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Token next() {
        skip_space();
        Token tok;
        tok.line = line_;
        tok.column = column_;
        if (pos_ == text_.size()) {
            return tok;
        }
        const char c = text_[pos_];
        if (is_letter(c)) {
            std::size_t end = pos_ + 1;
            while (end < text_.size() && is_ident_char(text_[end])) {
                ++end;
            }
            tok.type = Tok::Ident;
            tok.text = text_.substr(pos_, end - pos_);
            advance(end - pos_);
            return tok;
        }
        switch (c) {
        case '0': tok.type = Tok::Zero; break;
        case '!': tok.type = Tok::Bang; break;
        case '?': tok.type = Tok::Query; break;
        case '(': tok.type = Tok::LParen; break;
        case ')': tok.type = Tok::RParen; break;
        case ',': tok.type = Tok::Comma; break;
        case ';': tok.type = Tok::Semicolon; break;
        default:
            throw ParseError(line_, column_,
                             "unexpected character '" + std::string(1, c) + "'");
        }
        tok.text = text_.substr(pos_, 1);
        advance(1);
        return tok;
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && is_space(text_[pos_])) {
            advance(1);
        }
    }

    void advance(std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else {
                ++column_;
            }
            ++pos_;
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

std::optional<NodeKind> binary_keyword(std::string_view word) {
    if (word == "strict") return NodeKind::Strict;
    if (word == "seq") return NodeKind::Seq;
    if (word == "par") return NodeKind::Par;
    if (word == "alt") return NodeKind::Alt;
    return std::nullopt;
}

std::optional<LoopKind> loop_keyword(std::string_view word) {
    if (word == "loopX") return LoopKind::X;
    if (word == "loopH") return LoopKind::H;
    if (word == "loopS") return LoopKind::S;
    if (word == "loopP") return LoopKind::P;
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(std::string_view text) : lexer_(text) {
        current_ = lexer_.next();
        lookahead_ = lexer_.next();
    }

    SourceDocument document() {
        std::optional<Signature> header;
        if (current_.type == Tok::Ident && current_.text == "lifelines" &&
            lookahead_.type == Tok::Ident) {
            header = parse_header();
            header_ = &*header;
        }
        Interaction body = expression();
        if (current_.type != Tok::End) {
            fail("unexpected " + describe(current_) + " after expression", {"end of input"});
        }
        if (header) {
            return SourceDocument{std::move(body), std::move(*header), true};
        }
        auto sig = Signature::from_actions(actions_of(body));
        return SourceDocument{std::move(body), std::move(sig), false};
    }

private:
    [[noreturn]] void fail(const std::string& message, std::vector<std::string> expected = {}) {
        throw ParseError(current_.line, current_.column, message, std::move(expected));
    }

    [[noreturn]] void fail_expected(std::vector<std::string> expected) {
        fail("unexpected " + describe(current_), std::move(expected));
    }

    Token consume() {
        Token t = current_;
        current_ = lookahead_;
        lookahead_ = lexer_.next();
        return t;
    }

    Token expect(Tok type, const char* spelling) {
        if (current_.type != type) {
            fail_expected({std::string("'") + spelling + "'"});
        }
        return consume();
    }

    std::vector<Identifier> identifier_list(const char* what) {
        std::vector<Identifier> ids;
        std::unordered_set<std::string_view> seen;
        while (current_.type == Tok::Ident) {
            if (!seen.insert(current_.text).second) {
                fail("duplicate " + std::string(what) + " '" + std::string(current_.text) + "'");
            }
            ids.emplace_back(consume().text);
        }
        if (ids.empty()) {
            fail_expected({"identifier"});
        }
        if (current_.type != Tok::Semicolon) {
            fail_expected({"identifier", "';'"});
        }
        consume();
        return ids;
    }

    Signature parse_header() {
        consume(); // lifelines
        auto lifelines = identifier_list("lifeline");
        if (current_.type != Tok::Ident || current_.text != "messages") {
            fail_expected({"'messages'"});
        }
        consume();
        auto messages = identifier_list("message");
        return Signature(std::move(lifelines), std::move(messages));
    }

    Interaction expression() {
        switch (current_.type) {
        case Tok::Zero:
            consume();
            return Interaction::empty();
        case Tok::Ident:
            break;
        default:
            fail_expected({"'0'", "action", "operator"});
        }
        if (lookahead_.type == Tok::LParen) {
            if (auto kind = binary_keyword(current_.text)) {
                return binary_call(*kind);
            }
            if (auto kind = loop_keyword(current_.text)) {
                consume();
                consume();
                Interaction body = expression();
                expect(Tok::RParen, ")");
                return Interaction::loop(*kind, std::move(body));
            }
            fail("unknown operator '" + std::string(current_.text) + "'",
                 {"strict", "seq", "par", "alt", "loopX", "loopH", "loopS", "loopP"});
        }
        return action();
    }

    Interaction binary_call(NodeKind kind) {
        consume();
        consume();
        std::vector<Interaction> operands;
        operands.push_back(expression());
        if (current_.type == Tok::RParen) {
            fail("'" + std::string(constructor_name(kind)) + "' needs at least two operands",
                 {"','"});
        }
        while (current_.type == Tok::Comma) {
            consume();
            operands.push_back(expression());
        }
        if (current_.type != Tok::RParen) {
            fail_expected({"')'", "','"});
        }
        consume();
        Interaction acc = std::move(operands.back());
        for (std::size_t k = operands.size() - 1; k-- > 0;) {
            acc = Interaction::binary(kind, std::move(operands[k]), std::move(acc));
        }
        return acc;
    }

    Interaction action() {
        const Token lifeline = consume();
        ActionKind kind;
        if (current_.type == Tok::Bang) {
            kind = ActionKind::Emission;
        } else if (current_.type == Tok::Query) {
            kind = ActionKind::Reception;
        } else {
            fail_expected({"'!'", "'?'"});
        }
        consume();
        if (current_.type != Tok::Ident) {
            fail_expected({"message identifier"});
        }
        const Token message = consume();
        Action a{std::string(lifeline.text), kind, std::string(message.text)};
        if (header_ != nullptr) {
            if (!header_->has_lifeline(a.lifeline)) {
                throw ParseError(lifeline.line, lifeline.column,
                                 "lifeline '" + a.lifeline + "' is not declared");
            }
            if (!header_->has_message(a.message)) {
                throw ParseError(message.line, message.column,
                                 "message '" + a.message + "' is not declared");
            }
        }
        return Interaction::act(std::move(a));
    }

    Lexer lexer_;
    Token current_;
    Token lookahead_;
    const Signature* header_ = nullptr;
};

void render_into(const Interaction& i, std::string& out) {
    switch (i.kind()) {
    case NodeKind::Empty:
        out += '0';
        return;
    case NodeKind::Act:
        out += render(i.action());
        return;
    case NodeKind::Loop:
        out += loop_name(i.loop_kind());
        out += '(';
        render_into(i.body(), out);
        out += ')';
        return;
    default:
        out += constructor_name(i.kind());
        out += '(';
        render_into(i.left(), out);
        out += ',';
        render_into(i.right(), out);
        out += ')';
        return;
    }
}

// Parses one trace occupying `text`, which starts at (line, column).
Trace parse_trace_at(std::string_view text, std::size_t line, std::size_t column) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && is_space(text[begin])) {
        ++begin;
    }
    while (end > begin && is_space(text[end - 1])) {
        --end;
    }
    const std::string_view body = text.substr(begin, end - begin);
    const auto col = [&](std::size_t offset) { return column + begin + offset; };
    if (body.empty()) {
        throw ParseError(line, col(0), "empty trace", {"action", "'eps'"});
    }
    if (body == "eps") {
        return {};
    }
    Trace out;
    std::size_t pos = 0;
    const auto ident = [&](const char* what) {
        if (pos >= body.size() || !is_letter(body[pos])) {
            throw ParseError(line, col(pos),
                             pos >= body.size() ? "unexpected end of trace"
                                                : "unexpected character '" +
                                                      std::string(1, body[pos]) + "'",
                             {what});
        }
        const std::size_t start = pos;
        while (pos < body.size() && is_ident_char(body[pos])) {
            ++pos;
        }
        return std::string(body.substr(start, pos - start));
    };
    while (true) {
        std::string lifeline = ident("lifeline identifier");
        ActionKind kind;
        if (pos < body.size() && body[pos] == '!') {
            kind = ActionKind::Emission;
        } else if (pos < body.size() && body[pos] == '?') {
            kind = ActionKind::Reception;
        } else {
            throw ParseError(line, col(pos),
                             pos >= body.size() ? "unexpected end of trace"
                                                : "unexpected character '" +
                                                      std::string(1, body[pos]) + "'",
                             {"'!'", "'?'"});
        }
        ++pos;
        std::string message = ident("message identifier");
        out.push_back(Action{std::move(lifeline), kind, std::move(message)});
        if (pos == body.size()) {
            return out;
        }
        if (body[pos] != '.') {
            throw ParseError(line, col(pos),
                             "unexpected character '" + std::string(1, body[pos]) + "'", {"'.'"});
        }
        ++pos;
    }
}

} // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::string message,
                       std::vector<std::string> expected)
    : std::runtime_error(format_error(line, column, message, expected)),
      line_(line),
      column_(column),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

SourceDocument parse_interaction(std::string_view text) {
    Parser parser(text);
    return parser.document();
}

std::string render_interaction(const Interaction& i) {
    std::string out;
    render_into(i, out);
    return out;
}

Trace parse_trace(std::string_view text) { return parse_trace_at(text, 1, 1); }

std::vector<Trace> parse_trace_lines(std::string_view text) {
    std::vector<Trace> out;
    std::size_t line = 1;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            nl = text.size();
        }
        const std::string_view row = text.substr(start, nl - start);
        bool blank = true;
        for (char c : row) {
            blank = blank && is_space(c);
        }
        if (!blank) {
            out.push_back(parse_trace_at(row, line, 1));
        }
        ++line;
        start = nl + 1;
    }
    return out;
}

} // namespace isd
