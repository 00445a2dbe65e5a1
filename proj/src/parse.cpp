#include "versal/parse.hpp"

#include <cctype>
#include <string>

#include "versal/errors.hpp"

namespace versal {
namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Number, std::string(s.substr(i, j - i))});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i))});
      i = j;
    } else {
      Tok k;
      switch (c) {
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '^': k = Tok::Caret; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        default: throw ParseError(std::string("unexpected character '") + c + "'");
      }
      out.push_back({k, std::string(1, c)});
      ++i;
    }
  }
  out.push_back({Tok::End, ""});
  return out;
}

class Parser {
 public:
  Parser(const RingPtr& ring, std::vector<Token> toks) : ring_(ring), toks_(std::move(toks)) {}

  Poly parse() {
    if (peek() == Tok::End) throw ParseError("empty polynomial");
    Poly p = expr();
    if (peek() != Tok::End) throw ParseError("unexpected token '" + toks_[pos_].text + "'");
    return p;
  }

 private:
  Tok peek() const { return toks_[pos_].kind; }
  const Token& next() { return toks_[pos_++]; }

  Poly expr() {
    Poly acc = term();
    while (peek() == Tok::Plus || peek() == Tok::Minus) {
      bool minus = next().kind == Tok::Minus;
      Poly t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  bool starts_factor() const {
    Tok k = peek();
    return k == Tok::Number || k == Tok::Ident || k == Tok::LParen;
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      if (peek() == Tok::Star) {
        next();
        acc = acc * factor();
      } else if (peek() == Tok::Slash) {
        next();
        Poly d = factor();
        if (!d.is_constant() || d.is_zero()) throw ParseError("division only by nonzero constants");
        acc = acc * d.constant_coeff().inverse();
      } else if (starts_factor()) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  Poly factor() {
    if (peek() == Tok::Minus) {
      next();
      return -factor();
    }
    if (peek() == Tok::Plus) {
      next();
      return factor();
    }
    Poly base = atom();
    if (peek() == Tok::Caret) {
      next();
      if (peek() != Tok::Number) throw ParseError("exponent must be a nonnegative integer");
      const std::string& e = next().text;
      if (e.size() > 6) throw ParseError("exponent too large");
      base = base.pow(static_cast<unsigned>(std::stoul(e)));
    }
    return base;
  }

  Poly atom() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Number:
        try {
          return Poly::constant(ring_, FieldElem::parse(ring_->field, t.text));
        } catch (const std::exception& e) {
          throw ParseError(e.what());
        }
      case Tok::Ident:
        for (std::size_t i = 0; i < ring_->nvars(); ++i)
          if (ring_->vars[i] == t.text) return Poly::variable(ring_, i);
        throw ParseError("unknown variable '" + t.text + "'");
      case Tok::LParen: {
        Poly p = expr();
        if (next().kind != Tok::RParen) throw ParseError("missing ')'");
        return p;
      }
      case Tok::End: throw ParseError("unexpected end of input");
      default: throw ParseError("unexpected token '" + t.text + "'");
    }
  }

  const RingPtr& ring_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

Poly parse_poly(const RingPtr& ring, std::string_view text) { return Parser(ring, tokenize(text)).parse(); }

std::vector<std::vector<Poly>> parse_matrix(const RingPtr& ring, std::string_view text) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') throw ParseError("matrix must be enclosed in [ ]");
  text = trim(text.substr(1, text.size() - 2));
  std::vector<std::vector<Poly>> rows;
  if (text.empty()) return rows;
  for (auto row : split(text, ';')) {
    std::vector<Poly> r;
    for (auto entry : split(row, ',')) r.push_back(parse_poly(ring, entry));
    if (!rows.empty() && rows.front().size() != r.size()) throw ParseError("ragged matrix rows");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<std::string> parse_identifier_list(std::string_view text) {
  std::vector<std::string> out;
  for (auto item : split(text, ',')) {
    if (item.empty()) throw ParseError("empty identifier in list");
    if (!(std::isalpha(static_cast<unsigned char>(item.front())) || item.front() == '_'))
      throw ParseError("bad identifier '" + std::string(item) + "'");
    for (char c : item)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw ParseError("bad identifier '" + std::string(item) + "'");
    for (const auto& existing : out)
      if (existing == item) throw ParseError("duplicate identifier '" + std::string(item) + "'");
    out.emplace_back(item);
  }
  return out;
}

}  // namespace versal
