#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace setplay::sexpr {

struct SourcePos {
  int line = 1;
  int column = 1;
};

enum class TokenKind { Open, Close, Atom };

struct Token {
  TokenKind kind;
  std::string text;  // atom text; "(" / ")" for parens
  SourcePos pos;
};

/// Generic S-expression node: an atom or an ordered list of children.
/// Structural equality ignores source positions.
class Node {
 public:
  Node() : is_atom_(false) {}

  static Node atom(std::string text, SourcePos pos = {}) {
    Node n;
    n.is_atom_ = true;
    n.text_ = std::move(text);
    n.pos_ = pos;
    return n;
  }

  static Node list(std::vector<Node> children, SourcePos pos = {}) {
    Node n;
    n.is_atom_ = false;
    n.children_ = std::move(children);
    n.pos_ = pos;
    return n;
  }

  bool is_atom() const { return is_atom_; }
  bool is_list() const { return !is_atom_; }

  const std::string& text() const { return text_; }
  const std::vector<Node>& children() const { return children_; }
  SourcePos pos() const { return pos_; }

  friend bool operator==(const Node& a, const Node& b) {
    if (a.is_atom_ != b.is_atom_) return false;
    if (a.is_atom_) return a.text_ == b.text_;
    return a.children_ == b.children_;
  }

 private:
  bool is_atom_;
  std::string text_;
  std::vector<Node> children_;
  SourcePos pos_;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind { UnbalancedParens, UnexpectedEOF };

  ParseError(Kind kind, SourcePos pos, const std::string& what)
      : std::runtime_error(what), kind(kind), pos(pos) {}

  Kind kind;
  SourcePos pos;
};

/// Lexes text into parens and atoms. Atoms are maximal runs of characters
/// that are neither whitespace nor parentheses; ':' and ';' are ordinary
/// atom characters. Never fails; balance is checked by parse().
std::vector<Token> tokenize(const std::string& text);

/// Parses a token stream into a single tree. Multiple top-level forms
/// (including zero) are wrapped in a synthetic root list.
/// Throws ParseError on unbalanced parens or truncated input.
Node parse(std::span<const Token> tokens);

/// tokenize + parse in one call.
Node parse_text(const std::string& text);

/// Renders a tree back to text; parse_text(serialize(t)) == t.
std::string serialize(const Node& node);

}  // namespace setplay::sexpr
