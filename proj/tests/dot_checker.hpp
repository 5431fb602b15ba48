#pragma once

#include <cctype>
#include <string>
#include <vector>

// Recursive-descent checker for the DOT grammar: graph kinds, statement
// lists, node/edge/attribute statements, subgraphs, ports, and the three ID
// forms (bare, numeral, double-quoted). Edge operators are checked against
// the graph kind. HTML strings are not used by this project and are
// rejected.
namespace dotcheck {

struct Checker {
  const std::string& text;
  std::size_t pos = 0;
  bool directed = false;
  std::string error;

  explicit Checker(const std::string& t) : text(t) {}

  [[nodiscard]] bool fail(const std::string& what) {
    if (error.empty()) error = what + " near offset " + std::to_string(pos);
    return false;
  }

  void skip_space() {
    while (pos < text.size()) {
      char c = text[pos];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '/') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else if (c == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '*') {
        pos += 2;
        while (pos + 1 < text.size() && !(text[pos] == '*' && text[pos + 1] == '/')) ++pos;
        pos = pos + 2 <= text.size() ? pos + 2 : text.size();
      } else {
        break;
      }
    }
  }

  bool peek(char c) {
    skip_space();
    return pos < text.size() && text[pos] == c;
  }

  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos;
    return true;
  }

  bool peek_word(const std::string& w) {
    skip_space();
    if (text.compare(pos, w.size(), w) != 0) return false;
    std::size_t end = pos + w.size();
    if (end < text.size() &&
        (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_'))
      return false;
    return true;
  }

  bool eat_word(const std::string& w) {
    if (!peek_word(w)) return false;
    pos += w.size();
    return true;
  }

  bool parse_id() {
    skip_space();
    if (pos >= text.size()) return fail("expected an ID");
    char c = text[pos];
    if (c == '"') {
      ++pos;
      while (pos < text.size()) {
        if (text[pos] == '\\' && pos + 1 < text.size()) {
          pos += 2;
        } else if (text[pos] == '"') {
          ++pos;
          return true;
        } else {
          ++pos;
        }
      }
      return fail("unterminated quoted string");
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      return true;
    }
    if (c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      if (text[pos] == '-') ++pos;
      bool digits = false;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        ++pos;
        digits = true;
      }
      if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          ++pos;
          digits = true;
        }
      }
      if (!digits) {
        pos = start;
        return fail("malformed numeral");
      }
      return true;
    }
    return fail("expected an ID");
  }

  bool parse_attr_list() {
    while (eat('[')) {
      // a_list: ID '=' ID separated by ',' or ';'
      while (!peek(']')) {
        if (!parse_id()) return false;
        if (!eat('=')) return fail("expected '=' in attribute");
        if (!parse_id()) return false;
        if (eat(',') || eat(';')) continue;
      }
      if (!eat(']')) return fail("expected ']'");
    }
    return true;
  }

  bool parse_port() {
    // port: ':' ID [':' ID]; compass points are IDs too.
    if (!eat(':')) return true;
    if (!parse_id()) return false;
    if (eat(':'))
      if (!parse_id()) return false;
    return true;
  }

  bool at_edge_op() {
    skip_space();
    if (pos + 1 >= text.size() || text[pos] != '-') return false;
    return text[pos + 1] == (directed ? '>' : '-');
  }

  bool eat_edge_op() {
    skip_space();
    if (pos + 1 < text.size() && text[pos] == '-') {
      char second = text[pos + 1];
      if (second == '-' || second == '>') {
        if (second != (directed ? '>' : '-'))
          return fail(directed ? "'--' inside a digraph" : "'->' inside a graph");
        pos += 2;
        return true;
      }
    }
    return fail("expected an edge operator");
  }

  bool parse_endpoint() {
    if (peek('{') || peek_word("subgraph")) return parse_subgraph();
    if (!parse_id()) return false;
    return parse_port();
  }

  bool parse_subgraph() {
    if (eat_word("subgraph")) {
      if (!peek('{'))
        if (!parse_id()) return false;
    }
    if (!eat('{')) return fail("expected '{'");
    if (!parse_stmt_list()) return false;
    if (!eat('}')) return fail("expected '}'");
    return true;
  }

  bool parse_stmt() {
    if (eat_word("graph") || eat_word("node") || eat_word("edge")) {
      skip_space();
      if (!peek('[')) return fail("expected an attribute list");
      return parse_attr_list();
    }
    if (peek('{') || peek_word("subgraph")) {
      if (!parse_subgraph()) return false;
    } else {
      if (!parse_id()) return false;
      if (eat('=')) return parse_id();
      if (!parse_port()) return false;
    }
    while (at_edge_op()) {
      if (!eat_edge_op()) return false;
      if (!parse_endpoint()) return false;
    }
    return parse_attr_list();
  }

  bool parse_stmt_list() {
    while (true) {
      skip_space();
      if (pos >= text.size() || peek('}')) return true;
      if (eat(';')) continue;
      if (!parse_stmt()) return false;
    }
  }

  bool parse_graph() {
    eat_word("strict");
    if (eat_word("digraph")) {
      directed = true;
    } else if (eat_word("graph")) {
      directed = false;
    } else {
      return fail("expected graph or digraph");
    }
    if (!peek('{'))
      if (!parse_id()) return false;
    if (!eat('{')) return fail("expected '{'");
    if (!parse_stmt_list()) return false;
    if (!eat('}')) return fail("expected '}'");
    skip_space();
    if (pos != text.size()) return fail("trailing text after the graph");
    return true;
  }
};

// True when text is a syntactically valid DOT graph; on failure err (when
// given) receives a located message.
inline bool dot_valid(const std::string& text, std::string* err = nullptr) {
  Checker checker(text);
  bool ok = checker.parse_graph();
  if (!ok && err) *err = checker.error;
  return ok;
}

}  // namespace dotcheck
