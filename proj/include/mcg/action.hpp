#pragma once

// Words in twists and polygon symmetries, their action on curves and on
// homology, and probe-based identity certificates.

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mcg/surface.hpp"

namespace mcg {

struct Token {
  enum class Kind { Twist, Sigma, Tau };
  Kind kind = Kind::Twist;
  char family = 'a';                 // a, b, c, e, f, or 'x' for a custom curve
  int index = 0;
  std::optional<CurveClass> curve;   // set for custom curves
  int exponent = 1;

  std::string to_string() const {
    std::string s;
    switch (kind) {
      case Kind::Sigma: s = "S"; break;
      case Kind::Tau: s = "T"; break;
      case Kind::Twist:
        if (family == 'x')
          s = "X[" + curve->to_string() + "]";
        else if (family == 'e' || family == 'f')
          s = std::string(1, static_cast<char>(std::toupper(family)));
        else
          s = std::string(1, static_cast<char>(std::toupper(family))) + std::to_string(index);
        break;
    }
    if (exponent != 1) s += "^" + std::to_string(exponent);
    return s;
  }
};

/// A product of tokens, written and composed right to left: the last token
/// acts first.
class MappingWord {
 public:
  explicit MappingWord(int genus, std::vector<Token> tokens = {}) : genus_(genus), tokens_(std::move(tokens)) {
    if (genus < 3) {
      throw UnsupportedGenus("genus " + std::to_string(genus) +
                             " is not supported by the polygon model (need g >= 3)");
    }
  }

  int genus() const noexcept { return genus_; }
  const std::vector<Token>& tokens() const noexcept { return tokens_; }
  bool empty() const noexcept { return tokens_.empty(); }

  static MappingWord twist(int genus, char family, int index, int exponent = 1) {
    Token t;
    t.kind = Token::Kind::Twist;
    t.family = static_cast<char>(std::tolower(family));
    t.index = ((index % (4 * genus + 2)) + 4 * genus + 2) % (4 * genus + 2);
    t.exponent = exponent;
    return MappingWord(genus, {t});
  }
  static MappingWord twist_about(const CurveClass& d, int exponent = 1) {
    Token t;
    t.family = 'x';
    t.curve = d;
    t.exponent = exponent;
    return MappingWord(d.genus(), {t});
  }
  static MappingWord sigma(int genus, int exponent = 1) {
    Token t;
    t.kind = Token::Kind::Sigma;
    t.exponent = exponent;
    return MappingWord(genus, {t});
  }
  static MappingWord tau(int genus) {
    Token t;
    t.kind = Token::Kind::Tau;
    return MappingWord(genus, {t});
  }

  friend MappingWord operator*(const MappingWord& a, const MappingWord& b) {
    if (a.genus_ != b.genus_) throw SchemeMismatch("composing words on different surfaces");
    std::vector<Token> t = a.tokens_;
    t.insert(t.end(), b.tokens_.begin(), b.tokens_.end());
    return MappingWord(a.genus_, std::move(t));
  }

  MappingWord inverse() const {
    std::vector<Token> t(tokens_.rbegin(), tokens_.rend());
    for (auto& tok : t) tok.exponent = -tok.exponent;
    return MappingWord(genus_, std::move(t));
  }

  MappingWord power(int k) const {
    MappingWord base = k < 0 ? inverse() : *this;
    MappingWord out(genus_);
    for (int i = 0; i < std::abs(k); ++i) out = out * base;
    return out;
  }

  /// +1 for orientation-preserving words, -1 otherwise.
  int orientation_character() const noexcept {
    int c = 1;
    for (const auto& t : tokens_)
      if (t.kind == Token::Kind::Tau && t.exponent % 2 != 0) c = -c;
    return c;
  }

  std::string to_string() const {
    if (tokens_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < tokens_.size(); ++i) s += (i ? "*" : "") + tokens_[i].to_string();
    return s;
  }

 private:
  int genus_;
  std::vector<Token> tokens_;
};

/// Parses `B1*B5^-1*S^2*T*E`. Letters: A, B, C (with an index), E, F, S
/// (rotation), T (reflection); optional `^<int>`; `1` is the empty word.
inline MappingWord parse_word(int genus, std::string_view text) {
  MappingWord out(genus);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&](bool allow_sign) -> int {
    std::size_t start = pos;
    bool neg = false;
    if (allow_sign && pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw ParseError("expected an integer", start);
    long long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1000000) throw ParseError("integer out of range", start);
      ++pos;
    }
    return static_cast<int>(neg ? -v : v);
  };
  skip();
  if (pos == text.size()) throw ParseError("empty word", 0);
  if (text.substr(pos) == "1") return out;
  while (true) {
    skip();
    if (pos >= text.size()) throw ParseError("expected a generator", pos);
    const std::size_t at = pos;
    const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[pos])));
    ++pos;
    MappingWord tok(genus);
    switch (c) {
      case 'A':
      case 'B':
      case 'C': {
        int idx = read_int(false);
        if (c == 'C' && genus != 3) throw ParseError("curve family c only exists at genus 3", at);
        tok = MappingWord::twist(genus, c, idx);
        break;
      }
      case 'E':
      case 'F': tok = MappingWord::twist(genus, c, 0); break;
      case 'S': tok = MappingWord::sigma(genus); break;
      case 'T': tok = MappingWord::tau(genus); break;
      default: throw ParseError(std::string("unknown generator '") + text[at] + "'", at);
    }
    skip();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      skip();
      int e = read_int(true);
      std::vector<Token> t = tok.tokens();
      t[0].exponent = e;
      tok = MappingWord(genus, std::move(t));
      skip();
    }
    out = out * tok;
    if (pos == text.size()) break;
    if (text[pos] != '*') throw ParseError("expected '*'", pos);
    ++pos;
  }
  return out;
}

namespace detail {

inline CurveClass token_curve(const Surface& s, const Token& t) {
  if (t.family == 'x') return *t.curve;
  return s.named({t.family, t.index});
}

}  // namespace detail

/// Image of x under the word; the orientation of x is carried along.
inline CurveClass apply(const MappingWord& w, const CurveClass& x) {
  if (w.genus() != x.genus()) throw SchemeMismatch("word and curve live on different surfaces");
  const Surface& s = surface(w.genus());
  CurveClass y = x;
  for (auto it = w.tokens().rbegin(); it != w.tokens().rend(); ++it) {
    const Token& t = *it;
    switch (t.kind) {
      case Token::Kind::Twist: y = twist(detail::token_curve(s, t), y, t.exponent); break;
      case Token::Kind::Sigma:
        if (t.exponent % s.sides() != 0) y = rotate(y, t.exponent);
        break;
      case Token::Kind::Tau:
        if (t.exponent % 2 != 0) y = relabel(y, s.tau());
        break;
    }
  }
  return y;
}

/// Integer matrix, row-major, square.
using IntMatrix = std::vector<std::vector<long long>>;

inline IntMatrix identity_int(std::size_t r) {
  IntMatrix m(r, std::vector<long long>(r, 0));
  for (std::size_t i = 0; i < r; ++i) m[i][i] = 1;
  return m;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t r = a.size();
  IntMatrix m(r, std::vector<long long>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < r; ++j) m[i][j] += a[i][k] * b[k][j];
  return m;
}

inline IntMatrix transpose(const IntMatrix& a) {
  IntMatrix m(a.size(), std::vector<long long>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m[j][i] = a[i][j];
  return m;
}

struct HomologyRep {
  IntMatrix matrix;  // column j = image of u_j
  int character = 1;
};

/// Action on H_1 in the basis u_0..u_{2g-1}. Throws InvalidInput if the
/// result fails M^T J M = character * J.
inline HomologyRep homology_rep(const MappingWord& w) {
  const Surface& s = surface(w.genus());
  const auto& basis = s.homology_basis();
  const std::size_t r = basis.size();
  HomologyRep rep;
  rep.character = w.orientation_character();
  rep.matrix.assign(r, std::vector<long long>(r, 0));
  for (std::size_t j = 0; j < r; ++j) {
    HomologyVector v = homology_class(apply(w, basis[j]));
    for (std::size_t i = 0; i < r; ++i) rep.matrix[i][j] = v.coords[i];
  }
  IntMatrix lhs = multiply(multiply(transpose(rep.matrix), s.form()), rep.matrix);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (lhs[i][j] != rep.character * s.form()[i][j])
        throw InvalidInput("homology action of " + w.to_string() + " does not preserve the intersection form");
  return rep;
}

enum class Verdict { Identity, NonIdentity, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Identity: return "identity";
    case Verdict::NonIdentity: return "non-identity";
    default: return "inconclusive";
  }
}

struct MappingClassCertificate {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<std::string> probes;  // probe names checked
  std::string witness;              // first failing check for non-identity

  explicit operator bool() const noexcept { return verdict == Verdict::Identity; }
};

/// Identity test: every probe curve must come back to itself (unoriented) and
/// the homology action must be trivial and orientation-preserving. The
/// probes fill the surface, so a word fixing all of them is isotopic to a
/// map of finite order acting trivially on homology, hence to the identity.
inline MappingClassCertificate is_identity(const MappingWord& w) {
  MappingClassCertificate cert;
  try {
    const Surface& s = surface(w.genus());
    if (w.orientation_character() != 1) {
      cert.verdict = Verdict::NonIdentity;
      cert.witness = "reverses orientation";
      return cert;
    }
    for (const auto& [name, x] : s.probes()) {
      cert.probes.push_back(name);
      CurveClass y = apply(w, x);
      if (y != x) {
        cert.verdict = Verdict::NonIdentity;
        auto image = s.name_of(y);
        cert.witness = name + " -> " + (image ? *image : y.to_string());
        return cert;
      }
    }
    HomologyRep rep = homology_rep(w);
    if (rep.matrix != identity_int(rep.matrix.size())) {
      cert.verdict = Verdict::NonIdentity;
      cert.witness = "nontrivial action on homology";
      return cert;
    }
    cert.verdict = Verdict::Identity;
  } catch (const InvalidInput&) {
    throw;
  } catch (const Error& e) {
    cert.verdict = Verdict::Inconclusive;
    cert.witness = e.what();
  }
  return cert;
}

/// v and w define the same mapping class.
inline bool classes_equal(const MappingWord& v, const MappingWord& w) {
  return is_identity(v * w.inverse()).verdict == Verdict::Identity;
}

namespace detail {

inline std::optional<int> homology_order(const HomologyRep& rep, int bound) {
  const IntMatrix id = identity_int(rep.matrix.size());
  IntMatrix m = rep.matrix;
  int ch = rep.character;
  for (int k = 1; k <= bound; ++k) {
    if (m == id && ch == 1) return k;
    m = multiply(m, rep.matrix);
    ch *= rep.character;
  }
  return std::nullopt;
}

}  // namespace detail

/// Order of the mapping class if it is at most `bound`; nullopt otherwise.
/// Candidates are multiples of the order on homology.
inline std::optional<int> order_of(const MappingWord& w, int bound) {
  if (bound < 1) return std::nullopt;
  HomologyRep rep = homology_rep(w);
  auto base = detail::homology_order(rep, bound);
  if (!base) return std::nullopt;
  for (int k = *base; k <= bound; k += *base)
    if (is_identity(w.power(k)).verdict == Verdict::Identity) return k;
  return std::nullopt;
}

}  // namespace mcg
