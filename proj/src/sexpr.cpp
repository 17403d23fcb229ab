#include "setplay/sexpr.hpp"

namespace setplay::sexpr {

namespace {

bool is_paren(char c) { return c == '(' || c == ')'; }

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

}  // namespace

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> tokens;
  SourcePos pos;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++pos.line;
      pos.column = 1;
      ++i;
      continue;
    }
    if (is_space(c)) {
      ++pos.column;
      ++i;
      continue;
    }
    if (c == '(') {
      tokens.push_back({TokenKind::Open, "(", pos});
      ++pos.column;
      ++i;
      continue;
    }
    if (c == ')') {
      tokens.push_back({TokenKind::Close, ")", pos});
      ++pos.column;
      ++i;
      continue;
    }
    SourcePos start = pos;
    std::size_t begin = i;
    while (i < text.size() && !is_space(text[i]) && !is_paren(text[i]) && text[i] != '\n') {
      ++i;
      ++pos.column;
    }
    tokens.push_back({TokenKind::Atom, text.substr(begin, i - begin), start});
  }
  return tokens;
}

Node parse(std::span<const Token> tokens) {
  std::vector<Node> roots;
  // Stack of open lists; each frame collects children until its Close.
  std::vector<std::pair<std::vector<Node>, SourcePos>> stack;

  for (const Token& tok : tokens) {
    switch (tok.kind) {
      case TokenKind::Open:
        stack.emplace_back(std::vector<Node>{}, tok.pos);
        break;
      case TokenKind::Close: {
        if (stack.empty()) {
          throw ParseError(ParseError::Kind::UnbalancedParens, tok.pos,
                           "unbalanced ')' at line " + std::to_string(tok.pos.line) +
                               ", column " + std::to_string(tok.pos.column));
        }
        Node done = Node::list(std::move(stack.back().first), stack.back().second);
        stack.pop_back();
        if (stack.empty()) {
          roots.push_back(std::move(done));
        } else {
          stack.back().first.push_back(std::move(done));
        }
        break;
      }
      case TokenKind::Atom: {
        Node a = Node::atom(tok.text, tok.pos);
        if (stack.empty()) {
          roots.push_back(std::move(a));
        } else {
          stack.back().first.push_back(std::move(a));
        }
        break;
      }
    }
  }
  if (!stack.empty()) {
    SourcePos at = stack.back().second;
    throw ParseError(ParseError::Kind::UnexpectedEOF, at,
                     "unexpected end of input; '(' at line " + std::to_string(at.line) +
                         ", column " + std::to_string(at.column) + " is never closed");
  }
  if (roots.size() == 1) return roots.front();
  return Node::list(std::move(roots));
}

Node parse_text(const std::string& text) { return parse(tokenize(text)); }

namespace {

void serialize_into(const Node& node, std::string& out) {
  if (node.is_atom()) {
    out += node.text();
    return;
  }
  out += '(';
  bool first = true;
  for (const Node& child : node.children()) {
    if (!first) out += ' ';
    first = false;
    serialize_into(child, out);
  }
  out += ')';
}

}  // namespace

std::string serialize(const Node& node) {
  std::string out;
  serialize_into(node, out);
  return out;
}

}  // namespace setplay::sexpr
