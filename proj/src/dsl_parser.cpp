#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>

#include <fmt/format.h>

#include "gmodel/dsl.hpp"

namespace gmodel {

std::string ParseError::message() const {
  const auto shown = found == "end of input" ? found : "'" + found + "'";
  return fmt::format("{}:{}: expected {}, found {}", span.line, span.column, expected, shown);
}

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> lex(std::string_view text, std::vector<ParseError>& errors) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto emit = [&](Tok kind, std::size_t start, std::size_t end, int startCol) {
    out.push_back(Token{kind, std::string(text.substr(start, end - start)),
                        SourceSpan{line, startCol, static_cast<int>(end - start)}});
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    const std::size_t start = i;
    const int startCol = col;
    if (ident_start(c)) {
      while (i < text.size() && ident_char(text[i])) ++i;
      emit(Tok::Ident, start, i, startCol);
    } else if (digit(c)) {
      while (i < text.size() && digit(text[i])) ++i;
      if (i + 1 < text.size() && text[i] == '.' && digit(text[i + 1])) {
        ++i;
        while (i < text.size() && digit(text[i])) ++i;
      }
      if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
        if (j < text.size() && digit(text[j])) {
          i = j;
          while (i < text.size() && digit(text[i])) ++i;
        }
      }
      if (i < text.size() && (text[i] == 'K' || text[i] == 'M') &&
          (i + 1 == text.size() || !ident_char(text[i + 1]))) {
        ++i;
      }
      emit(Tok::Number, start, i, startCol);
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      i += 2;
      emit(Tok::Punct, start, i, startCol);
    } else if (std::string_view("{}[]:,.=<+-").find(c) != std::string_view::npos) {
      ++i;
      emit(Tok::Punct, start, i, startCol);
    } else {
      errors.push_back(ParseError{SourceSpan{line, col, 1}, "a token", std::string(1, c)});
      ++i;
    }
    col += static_cast<int>(i - start);
  }
  out.push_back(Token{Tok::End, "", SourceSpan{line, col, 0}});
  return out;
}

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return t.text;
}

struct PendingSymbol {
  std::string name;
  SourceSpan span;
};

class Parser {
public:
  Parser(std::vector<Token> tokens, std::vector<ParseError> lexErrors)
      : toks_(std::move(tokens)), errors_(std::move(lexErrors)) {}

  ParseResult run() {
    bool sawPlatform = false;
    bool sawApplication = false;
    while (peek().kind != Tok::End) {
      try {
        if (at_keyword("platform")) {
          parse_block(ComponentKind::Platform, sawPlatform);
        } else if (at_keyword("application")) {
          parse_block(ComponentKind::Application, sawApplication);
        } else if (at_keyword("allocate")) {
          parse_allocation();
        } else {
          fail(sawPlatform || sawApplication ? "'platform', 'application' or 'allocate'"
                                             : "'platform' or 'application'");
        }
      } catch (const Failure&) {
        resync();
      }
    }
    const auto& end = peek();
    if (!sawPlatform && !sawApplication) {
      record(end, "'platform' or 'application'");
    } else if (!sawPlatform) {
      record(end, "'platform'");
    } else if (!sawApplication) {
      record(end, "'application'");
    }

    std::set<std::string> declared;
    for (const auto& s : model_.sizes) declared.insert(s.name);
    for (const auto& sym : symbols_) {
      if (!declared.count(sym.name)) {
        errors_.push_back(ParseError{sym.span, "a declared size name", sym.name});
      }
    }

    if (!errors_.empty()) {
      std::stable_sort(errors_.begin(), errors_.end(), [](const ParseError& a, const ParseError& b) {
        return std::tie(a.span.line, a.span.column) < std::tie(b.span.line, b.span.column);
      });
      return ParseResult(std::move(errors_));
    }
    return ParseResult(rebind_sizes(std::move(model_), {}));
  }

private:
  struct Failure {};

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& advance() {
    const auto& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_keyword(std::string_view kw) const { return peek().kind == Tok::Ident && peek().text == kw; }
  bool at_punct(std::string_view p) const { return peek().kind == Tok::Punct && peek().text == p; }

  void record(const Token& at, std::string expected) {
    errors_.push_back(ParseError{at.span, std::move(expected), describe(at)});
  }
  [[noreturn]] void fail(std::string expected) {
    record(peek(), std::move(expected));
    throw Failure{};
  }

  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) fail(fmt::format("'{}'", kw));
    advance();
  }
  void expect_punct(std::string_view p) {
    if (!at_punct(p)) fail(fmt::format("'{}'", p));
    advance();
  }
  std::string expect_ident(std::string_view what) {
    if (peek().kind != Tok::Ident) fail(std::string(what));
    return advance().text;
  }

  // Skips the rest of the offending line. A block opened on that line is
  // skipped up to its closing brace; a closing brace of the enclosing block
  // is left in place.
  void resync() {
    const int line = peek().span.line;
    int depth = 0;
    while (peek().kind != Tok::End) {
      const auto& t = peek();
      if (depth == 0 && t.span.line != line) break;
      if (t.kind == Tok::Punct && t.text == "{") {
        ++depth;
      } else if (t.kind == Tok::Punct && t.text == "}") {
        if (depth == 0) break;
        --depth;
      }
      advance();
    }
  }

  void end_statement(int line) {
    const auto& t = peek();
    if (t.kind == Tok::End || (t.kind == Tok::Punct && t.text == "}")) return;
    if (t.span.line == line) fail("end of line");
  }

  std::int64_t parse_integer(const Token& t, std::string_view what) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (t.kind != Tok::Number || ec != std::errc() || p != t.text.data() + t.text.size()) {
      record(t, std::string(what));
      throw Failure{};
    }
    return v;
  }

  std::int64_t expect_integer(std::string_view what) {
    const auto& t = peek();
    auto v = parse_integer(t, what);
    advance();
    return v;
  }

  double expect_real(std::string_view what) {
    const auto& t = peek();
    double v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (t.kind != Tok::Number || ec != std::errc() || p != t.text.data() + t.text.size()) fail(std::string(what));
    advance();
    return v;
  }

  std::int64_t expect_capacity() {
    const auto& t = peek();
    if (t.kind != Tok::Number || t.text.empty()) fail("a byte count");
    std::int64_t scale = 1;
    std::string digits = t.text;
    if (digits.back() == 'K') scale = 1024;
    if (digits.back() == 'M') scale = 1048576;
    if (scale != 1) digits.pop_back();
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || p != digits.data() + digits.size()) fail("a byte count");
    advance();
    return v * scale;
  }

  std::string parse_path() {
    std::string path = expect_ident("a path");
    while (at_punct(".")) {
      advance();
      path += '.';
      path += expect_ident("an identifier");
    }
    return path;
  }

  Shape parse_shape() {
    expect_punct("[");
    Shape shape;
    while (true) {
      const auto& t = peek();
      if (t.kind == Tok::Number) {
        shape.dims.push_back(Extent::literal(expect_integer("a dimension")));
      } else if (t.kind == Tok::Ident) {
        Extent e;
        e.symbol = t.text;
        symbols_.push_back(PendingSymbol{t.text, t.span});
        advance();
        if (at_punct("+") || at_punct("-")) {
          const bool neg = peek().text == "-";
          advance();
          e.offset = expect_integer("an integer offset");
          if (neg) e.offset = -e.offset;
        }
        shape.dims.push_back(std::move(e));
      } else {
        fail("a dimension");
      }
      if (at_punct(",")) {
        advance();
        continue;
      }
      expect_punct("]");
      return shape;
    }
  }

  void parse_attributes(HwStereotype& st) {
    while (peek().kind == Tok::Ident && peek(1).kind == Tok::Punct && peek(1).text == "=") {
      const auto key = peek().text;
      if (key != "role" && key != "capacity" && key != "frequency") fail("'role', 'capacity' or 'frequency'");
      advance();
      advance();
      if (key == "role") {
        auto role = peek().kind == Tok::Ident ? parse_memory_role(peek().text) : std::nullopt;
        if (!role) fail("a memory role");
        advance();
        st.role = role;
      } else if (key == "capacity") {
        st.capacityBytes = expect_capacity();
      } else {
        st.frequencyMHz = expect_integer("a frequency in MHz");
      }
    }
  }

  HwStereotype parse_stereotype_kind() {
    auto kind = peek().kind == Tok::Ident ? parse_hw_kind(peek().text) : std::nullopt;
    if (!kind) fail("'hwProcessor', 'hwMemory' or 'hwBus'");
    advance();
    HwStereotype st;
    st.kind = *kind;
    return st;
  }

  void parse_block(ComponentKind kind, bool& seen) {
    const bool platform = kind == ComponentKind::Platform;
    if (seen) fail(platform ? "a single 'platform' block" : "a single 'application' block");
    advance();
    auto name = expect_ident("a block name");
    expect_punct("{");
    seen = true;
    (platform ? model_.platformRoot : model_.applicationRoot) = name;

    while (true) {
      if (at_punct("}")) {
        advance();
        return;
      }
      if (peek().kind == Tok::End) fail("'}'");
      try {
        if (at_keyword("component")) {
          parse_component(kind);
        } else if (at_keyword("size")) {
          parse_size();
        } else {
          fail("'component' or 'size'");
        }
      } catch (const Failure&) {
        resync();
      }
    }
  }

  void parse_size() {
    const int line = peek().span.line;
    advance();
    const auto& nameTok = peek();
    auto name = expect_ident("a size name");
    if (std::any_of(model_.sizes.begin(), model_.sizes.end(), [&](const SizeParam& s) { return s.name == name; })) {
      record(nameTok, "a new size name");
      throw Failure{};
    }
    expect_punct("=");
    auto value = expect_integer("a size value");
    end_statement(line);
    model_.sizes.push_back(SizeParam{name, value});
  }

  void parse_component(ComponentKind kind) {
    advance();
    Component c;
    c.kind = kind;
    c.name = expect_ident("a component name");
    if (at_punct(":")) {
      advance();
      auto st = parse_stereotype_kind();
      parse_attributes(st);
      c.stereotype = st;
    }
    expect_punct("{");

    while (true) {
      if (at_punct("}")) {
        advance();
        break;
      }
      if (peek().kind == Tok::End) {
        record(peek(), "'}'");
        break;
      }
      try {
        parse_statement(c);
      } catch (const Failure&) {
        resync();
      }
    }
    auto& list = kind == ComponentKind::Platform ? model_.platformComponents : model_.applicationComponents;
    list.push_back(std::move(c));
  }

  void parse_statement(Component& c) {
    const int line = peek().span.line;
    if (at_keyword("port")) {
      advance();
      FlowPort p;
      p.name = expect_ident("a port name");
      auto dir = peek().kind == Tok::Ident ? parse_direction(peek().text) : std::nullopt;
      if (!dir) fail("'in', 'out' or 'inout'");
      advance();
      p.direction = *dir;
      auto type = peek().kind == Tok::Ident ? parse_data_type(peek().text) : std::nullopt;
      if (!type) fail("a data type");
      advance();
      p.type = *type;
      p.shape = parse_shape();
      c.ports.push_back(std::move(p));
    } else if (at_keyword("part") || at_keyword("processor") || at_keyword("memory") || at_keyword("bus")) {
      PartInstance part;
      part.kind = peek().text == "part"        ? PartKind::Part
                  : peek().text == "processor" ? PartKind::Processor
                  : peek().text == "memory"    ? PartKind::Memory
                                               : PartKind::Bus;
      advance();
      part.name = expect_ident("a part name");
      expect_punct(":");
      if (peek().kind == Tok::Ident && parse_hw_kind(peek().text)) {
        part.inlineStereotype = parse_stereotype_kind();
      } else {
        part.typeRef = expect_ident("a component type");
      }
      if (at_keyword("shaped")) {
        advance();
        part.shaped = parse_shape();
      }
      if (part.inlineStereotype) parse_attributes(*part.inlineStereotype);
      c.parts.push_back(std::move(part));
    } else if (at_keyword("connect")) {
      advance();
      Connector conn;
      conn.source = parse_path();
      expect_punct("->");
      conn.target = parse_path();
      c.connectors.push_back(std::move(conn));
    } else if (at_keyword("repeat")) {
      advance();
      c.repetitionSpace = parse_shape();
    } else if (at_keyword("deploy")) {
      advance();
      c.elementaryOp = expect_ident("an intrinsic name");
    } else if (at_keyword("until")) {
      advance();
      ContinueCondition u;
      u.path = parse_path();
      expect_punct("<");
      u.tol = expect_real("a tolerance");
      expect_keyword("maxIter");
      u.maxIter = expect_integer("an iteration count");
      c.until = std::move(u);
    } else {
      fail("'port', 'part', 'processor', 'memory', 'bus', 'connect', 'repeat', 'deploy', 'until' or '}'");
    }
    end_statement(line);
  }

  void parse_allocation() {
    const int line = peek().span.line;
    advance();
    AllocationLink link;
    if (at_keyword("data")) {
      link.kind = AllocKind::Data;
    } else if (at_keyword("task")) {
      link.kind = AllocKind::Task;
    } else {
      fail("'data' or 'task'");
    }
    advance();
    link.source = parse_path();
    expect_keyword("onto");
    link.target = parse_path();
    if (link.kind == AllocKind::Data && at_keyword("as")) {
      advance();
      auto space = peek().kind == Tok::Ident ? parse_address_space(peek().text) : std::nullopt;
      if (!space) fail("an address-space qualifier");
      advance();
      link.space = space;
    }
    end_statement(line);
    model_.allocations.push_back(std::move(link));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<ParseError> errors_;
  std::vector<PendingSymbol> symbols_;
  Model model_;
};

}  // namespace

ParseResult parse_model(std::string_view text) {
  std::vector<ParseError> errors;
  auto tokens = lex(text, errors);
  return Parser(std::move(tokens), std::move(errors)).run();
}

}  // namespace gmodel
