#include "torusrf/io.hpp"

#include <cctype>
#include <cstdlib>

#include "torusrf/error.hpp"

namespace torusrf {

namespace {

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

struct Token {
  char symbol;
  long exponent;
};

// Generator tokens g or g^n; "1" alone is the empty word.
std::vector<Token> tokenize(const std::string& raw) {
  const std::string s = strip_spaces(raw);
  std::vector<Token> out;
  if (s == "1") return out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (!std::islower(static_cast<unsigned char>(c))) {
      raise(ErrorKind::SyntaxError, std::string("unexpected character '") + c + "' in \"" + raw + "\"");
    }
    ++i;
    long e = 1;
    if (i < s.size() && s[i] == '^') {
      ++i;
      std::size_t j = i;
      if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
      const std::size_t digits = j;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j == digits) raise(ErrorKind::SyntaxError, "missing exponent in \"" + raw + "\"");
      e = std::strtol(s.substr(i, j - i).c_str(), nullptr, 10);
      i = j;
    }
    out.push_back({c, e});
  }
  return out;
}

void append(std::vector<Letter>& letters, Letter l, long e) {
  for (long r = 0; r < std::labs(e); ++r) letters.push_back(e > 0 ? l : -l);
}

BigInt entry_from_json(const Json& v) {
  if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
      raise(ErrorKind::SyntaxError, "bad matrix entry \"" + s + "\"");
    }
    return BigInt(s);
  }
  raise(ErrorKind::SyntaxError, "matrix entry must be an integer or decimal string");
}

}  // namespace

Endo parse_endo(const std::string& text) {
  std::vector<std::string> defs;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      defs.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  defs.push_back(cur);

  std::string alphabet;
  std::vector<std::string> rhs;
  for (const auto& raw : defs) {
    const std::string d = strip_spaces(raw);
    if (d.empty()) raise(ErrorKind::SyntaxError, "empty definition in \"" + text + "\"");
    const auto arrow = d.find("->");
    if (arrow == std::string::npos) raise(ErrorKind::MissingImage, "no image given in \"" + d + "\"");
    const std::string name = d.substr(0, arrow);
    if (name.size() != 1 || !std::islower(static_cast<unsigned char>(name[0])) || name[0] == 't') {
      raise(ErrorKind::SyntaxError, "bad generator name \"" + name + "\"");
    }
    if (alphabet.find(name[0]) != std::string::npos) {
      raise(ErrorKind::SyntaxError, "generator " + name + " defined twice");
    }
    alphabet.push_back(name[0]);
    rhs.push_back(d.substr(arrow + 2));
  }

  const std::size_t k = alphabet.size();
  std::vector<Word> images;
  for (const auto& r : rhs) {
    if (r.empty()) raise(ErrorKind::SyntaxError, "empty image; write 1 for the identity");
    std::vector<Letter> letters;
    for (const auto& tok : tokenize(r)) {
      const auto pos = alphabet.find(tok.symbol);
      if (pos == std::string::npos) {
        raise(ErrorKind::UnknownGenerator, std::string("generator ") + tok.symbol + " has no image");
      }
      append(letters, static_cast<Letter>(pos + 1), tok.exponent);
    }
    images.emplace_back(letters, k);
  }
  return Endo(std::move(images), alphabet);
}

std::string format_endo(const Endo& phi) {
  std::string s;
  for (std::size_t i = 0; i < phi.rank(); ++i) {
    if (i) s += ", ";
    s.push_back(phi.alphabet()[i]);
    s += "->";
    s += format_word(phi.images()[i], phi.alphabet());
  }
  return s;
}

Word parse_word(const std::string& text, const Endo& phi) {
  std::vector<Letter> letters;
  for (const auto& tok : tokenize(text)) {
    const auto pos = phi.alphabet().find(tok.symbol);
    if (pos == std::string::npos) raise(ErrorKind::UnknownGenerator, std::string("unknown generator ") + tok.symbol);
    append(letters, static_cast<Letter>(pos + 1), tok.exponent);
  }
  return Word(letters, phi.rank());
}

HnnWord parse_hnn_word(const std::string& text, const Endo& phi) {
  std::vector<HnnLetter> letters;
  for (const auto& tok : tokenize(text)) {
    int gen = 0;
    if (tok.symbol != 't') {
      const auto pos = phi.alphabet().find(tok.symbol);
      if (pos == std::string::npos) {
        raise(ErrorKind::UnknownGenerator, std::string("unknown generator ") + tok.symbol);
      }
      gen = static_cast<int>(pos + 1);
    }
    for (long r = 0; r < std::labs(tok.exponent); ++r) letters.push_back({gen, tok.exponent > 0 ? 1 : -1});
  }
  return HnnWord(phi, std::move(letters));
}

IntMat int_mat_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
      j[1].size() != 2) {
    raise(ErrorKind::SyntaxError, "matrix must be [[a,b],[c,d]]");
  }
  return {{entry_from_json(j[0][0]), entry_from_json(j[0][1]), entry_from_json(j[1][0]), entry_from_json(j[1][1])}};
}

IntTuple int_tuple_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) raise(ErrorKind::SyntaxError, "expected a nonempty list of matrices");
  IntTuple out;
  for (const auto& m : j) out.push_back(int_mat_from_json(m));
  return out;
}

Json to_json(const IntMat& m) {
  return Json::array({Json::array({m.a().str(), m.b().str()}), Json::array({m.c().str(), m.d().str()})});
}

Json to_json(const IntTuple& t) {
  Json out = Json::array();
  for (const auto& m : t) out.push_back(to_json(m));
  return out;
}

Json to_json(const ModMat& m) {
  return Json::array({Json::array({m.a().to_string(), m.b().to_string()}),
                      Json::array({m.c().to_string(), m.d().to_string()})});
}

Json to_json(const ModTuple& t) {
  Json out = Json::array();
  for (const auto& m : t) out.push_back(to_json(m));
  return out;
}

IntTuple example_matrices() { return {make_int_mat(5, 2, 2, 1), make_int_mat(1, 2, 2, 5)}; }

}  // namespace torusrf
