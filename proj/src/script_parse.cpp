#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "kirbylab/errors.hpp"
#include "kirbylab/script.hpp"

namespace kirby::script {

namespace {

// Keywords are reserved: they can never be handle, generator, state, or cork
// labels, which keeps the grammar LL(1) (a class combination ends exactly
// where the next keyword begins).
const std::set<std::string>& reserved_words() {
  static const std::set<std::string> r = {
      "begin",  "ambient", "counts",  "closed",   "handle", "class",
      "framing", "links",  "blowup",  "strands",  "blowdown", "slide",
      "over",   "sign",    "lk",      "cancel",   "token",  "exchange",
      "as",     "once",    "rbd",     "p",        "handles", "label",
      "cork",   "link",    "twist",   "one",      "two",    "certify",
      "fact",   "assume",  "assert",  "b2",       "chi",    "sigma",
      "parity", "odd",     "even",    "ledger",   "model",  "gram",
      "cp",     "stable",  "true",    "false",
  };
  return r;
}

struct Token {
  enum Kind { Word, Number, LBracket, RBracket, String, End };
  Kind kind = End;
  std::string text;
  Int value = 0;
  int col = 1;
};

bool is_word_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '[' &&
         c != ']' && c != '"' && c != '#';
}

bool is_integer(const std::string& s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::vector<Token> lex_line(const std::string& s, int line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const int col = static_cast<int>(i) + 1;
    if (c == '#') break;  // trailing comment: rest of the line is ignored
    if (c == '[') {
      out.push_back({Token::LBracket, "[", 0, col});
      ++i;
    } else if (c == ']') {
      out.push_back({Token::RBracket, "]", 0, col});
      ++i;
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < s.size() && s[j] != '"') ++j;
      if (j == s.size())
        throw ParseError(line, col, "closing '\"'", "end of line");
      out.push_back({Token::String, s.substr(i + 1, j - i - 1), 0, col});
      i = j + 1;
    } else {
      std::size_t j = i;
      while (j < s.size() && is_word_char(s[j])) ++j;
      const std::string w = s.substr(i, j - i);
      if (is_integer(w)) {
        Token t{Token::Number, w, 0, col};
        try {
          t.value = static_cast<Int>(std::stoll(w));
        } catch (const std::exception&) {
          throw ParseError(line, col, "integer in range", "'" + w + "'");
        }
        out.push_back(t);
      } else {
        out.push_back({Token::Word, w, 0, col});
      }
      i = j;
    }
  }
  const int end_col = static_cast<int>(s.size()) + 1;
  out.push_back({Token::End, "", 0, end_col});
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Word:
      return "'" + t.text + "'";
    case Token::Number:
      return "'" + t.text + "'";
    case Token::LBracket:
      return "'['";
    case Token::RBracket:
      return "']'";
    case Token::String:
      return "string";
    case Token::End:
      return "end of line";
  }
  return "?";
}

bool is_label_text(const std::string& s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
      return false;
  return true;
}

// "7h" / "-3e1" / "e2" / "+h" -> (coefficient, label)
bool parse_term(const std::string& s, ComboTerm& out) {
  std::size_t i = 0;
  Int sign = 1;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    if (s[i] == '-') sign = -1;
    ++i;
  }
  std::size_t d0 = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  const std::string digits = s.substr(d0, i - d0);
  const std::string label = s.substr(i);
  if (!is_label_text(label)) return false;
  if (reserved_words().count(label) != 0) return false;
  Int mag = 1;
  if (!digits.empty()) {
    try {
      mag = static_cast<Int>(std::stoll(digits));
    } catch (const std::exception&) {
      return false;
    }
  }
  out.coeff = sign * mag;
  out.label = label;
  return true;
}

class LineParser {
 public:
  LineParser(std::vector<Token> toks, int line)
      : toks_(std::move(toks)), line_(line) {}

  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
  bool at_end() const { return peek().kind == Token::End; }

  [[noreturn]] void err(const std::string& expected, const Token& t) const {
    throw ParseError(line_, t.col, expected, describe(t));
  }

  void expect_end() {
    if (!at_end()) err("end of line", peek());
  }
  void expect_keyword(const std::string& kw) {
    const Token& t = next();
    if (t.kind != Token::Word || t.text != kw) err("'" + kw + "'", t);
  }
  bool peek_keyword(const std::string& kw) const {
    return peek().kind == Token::Word && peek().text == kw;
  }
  Int expect_number(const std::string& what = "integer") {
    const Token& t = next();
    if (t.kind != Token::Number) err(what, t);
    return t.value;
  }
  Int expect_sign() {
    const Token& t = next();
    if (t.kind != Token::Number || (t.value != 1 && t.value != -1))
      err("'+1' or '-1'", t);
    return t.value;
  }
  int expect_index() {
    const Token& t = next();
    if (t.kind != Token::Number || t.value < 0) err("1-handle index", t);
    return static_cast<int>(t.value);
  }
  std::string expect_label(const std::string& what = "label") {
    const Token& t = next();
    if (t.kind != Token::Word || !is_label_text(t.text)) err(what, t);
    if (reserved_words().count(t.text) != 0) err(what, t);
    return t.text;
  }
  std::string expect_string() {
    const Token& t = next();
    if (t.kind != Token::String) err("quoted string", t);
    return t.text;
  }
  bool expect_bool() {
    const Token& t = next();
    if (t.kind == Token::Word && t.text == "true") return true;
    if (t.kind == Token::Word && t.text == "false") return false;
    err("'true' or 'false'", t);
  }
  lattice::Parity expect_parity() {
    const Token& t = next();
    if (t.kind == Token::Word && t.text == "odd") return lattice::Parity::Odd;
    if (t.kind == Token::Word && t.text == "even")
      return lattice::Parity::Even;
    err("'odd' or 'even'", t);
  }

  // One or more combo terms; stops at a keyword, bracket, or end of line.
  Combo expect_combo() {
    Combo combo;
    while (peek().kind == Token::Word) {
      ComboTerm term;
      if (!parse_term(peek().text, term)) break;
      combo.push_back(term);
      next();
    }
    if (combo.empty()) err("class term (like '7h' or '-3e1')", peek());
    return combo;
  }

  std::vector<std::string> expect_label_list() {
    expect_bracket_open();
    std::vector<std::string> labels;
    while (!peek_bracket_close()) labels.push_back(expect_label());
    next();  // ']'
    if (labels.empty()) err("label", peek());
    return labels;
  }
  std::vector<Int> expect_number_list() {
    expect_bracket_open();
    std::vector<Int> nums;
    while (!peek_bracket_close()) nums.push_back(expect_number());
    next();  // ']'
    return nums;
  }

 private:
  void expect_bracket_open() {
    const Token& t = next();
    if (t.kind != Token::LBracket) err("'['", t);
  }
  bool peek_bracket_close() {
    if (peek().kind == Token::RBracket) return true;
    if (peek().kind == Token::End) err("']'", peek());
    return false;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  int line_;
};

Payload parse_assert(LineParser& p) {
  StAssert st;
  const Token& t = p.next();
  if (t.kind != Token::Word) p.err("assertion kind", t);
  const std::string& k = t.text;
  if (k == "b2") {
    st.kind = AssertKind::B2;
    st.a = p.expect_number();
  } else if (k == "chi") {
    st.kind = AssertKind::Chi;
    st.a = p.expect_number();
  } else if (k == "sigma") {
    st.kind = AssertKind::Sigma;
    st.a = p.expect_number();
  } else if (k == "parity") {
    st.kind = AssertKind::Parity;
    st.parity = p.expect_parity();
  } else if (k == "framing") {
    st.kind = AssertKind::Framing;
    st.label = p.expect_label();
    st.a = p.expect_number();
  } else if (k == "class") {
    st.kind = AssertKind::Class;
    st.label = p.expect_label();
    st.combo = p.expect_combo();
  } else if (k == "ledger") {
    st.kind = AssertKind::Ledger;
    st.a = p.expect_number();
    st.b = p.expect_number();
    st.parity = p.expect_parity();
  } else if (k == "model") {
    st.kind = AssertKind::Model;
    st.a = p.expect_number();
    st.b = p.expect_number();
  } else if (k == "gram") {
    st.kind = AssertKind::Gram;
    st.labels = p.expect_label_list();
    p.expect_keyword("cp");
    st.a = p.expect_number();
  } else if (k == "stable") {
    st.kind = AssertKind::Stable;
    st.r1 = p.expect_number();
    st.s1 = p.expect_number();
    st.p1 = p.expect_parity();
    st.r2 = p.expect_number();
    st.s2 = p.expect_number();
    st.p2 = p.expect_parity();
    st.expected = p.expect_bool();
  } else {
    p.err("assertion kind ('b2', 'chi', 'sigma', 'parity', 'framing', "
          "'class', 'ledger', 'model', 'gram', or 'stable')",
          t);
  }
  return st;
}

Payload parse_payload(LineParser& p) {
  const Token& head = p.next();
  if (head.kind != Token::Word) p.err("statement keyword", head);
  const std::string& k = head.text;

  if (k == "begin") return StBegin{p.expect_label("state name")};
  if (k == "ambient") {
    StAmbient st;
    st.label = p.expect_label("generator label");
    st.square = p.expect_sign();
    return st;
  }
  if (k == "counts") {
    StCounts st;
    st.zero = p.expect_number();
    st.one = p.expect_number();
    st.three = p.expect_number();
    st.four = p.expect_number();
    return st;
  }
  if (k == "closed") return StClosed{p.expect_bool()};
  if (k == "handle") {
    StHandle st;
    st.label = p.expect_label();
    if (p.peek_keyword("class")) {
      p.next();
      st.cls = p.expect_combo();
    }
    if (p.peek_keyword("framing")) {
      p.next();
      st.framing = p.expect_number();
    }
    if (p.peek_keyword("links")) {
      p.next();
      st.links = p.expect_number_list();
    }
    return st;
  }
  if (k == "blowup") {
    StBlowup st;
    st.sign = p.expect_sign();
    st.label = p.expect_label();
    if (p.peek_keyword("strands")) {
      p.next();
      do {
        const std::string l = p.expect_label();
        const Int m = p.expect_number("strand multiplicity");
        st.strands.emplace_back(l, m);
      } while (!p.at_end());
    }
    return st;
  }
  if (k == "blowdown") return StBlowdown{p.expect_label()};
  if (k == "slide") {
    StSlide st;
    st.moving = p.expect_label();
    p.expect_keyword("over");
    st.over = p.expect_label();
    p.expect_keyword("sign");
    st.sign = p.expect_sign();
    if (p.peek_keyword("lk")) {
      p.next();
      st.lk = p.expect_number();
    }
    return st;
  }
  if (k == "cancel") {
    StCancel st;
    st.one_index = p.expect_index();
    st.two_label = p.expect_label();
    p.expect_keyword("token");
    st.token = p.expect_string();
    return st;
  }
  if (k == "exchange") {
    StExchange st;
    st.one_index = p.expect_index();
    if (p.peek_keyword("as")) {
      p.next();
      st.as_label = p.expect_label();
    }
    if (p.peek_keyword("once")) {
      p.next();
      st.once_token = p.expect_string();
    }
    return st;
  }
  if (k == "rbd") {
    StRbd st;
    p.expect_keyword("p");
    st.p = p.expect_number();
    p.expect_keyword("handles");
    st.labels = p.expect_label_list();
    if (p.peek_keyword("label")) {
      p.next();
      st.bp_label = p.expect_label();
    }
    return st;
  }
  if (k == "cork") {
    StCork st;
    st.name = p.expect_label("cork name");
    p.expect_keyword("link");
    st.link = p.expect_number();
    return st;
  }
  if (k == "twist") {
    StTwist st;
    p.expect_keyword("cork");
    st.cork_name = p.expect_label("cork name");
    p.expect_keyword("one");
    st.one_index = p.expect_index();
    p.expect_keyword("two");
    st.two_label = p.expect_label();
    return st;
  }
  if (k == "certify") {
    StCertify st;
    while (p.peek_keyword("fact")) {
      p.next();
      st.facts.push_back(p.expect_string());
    }
    return st;
  }
  if (k == "assume") return StAssume{p.expect_string()};
  if (k == "assert") return parse_assert(p);

  p.err("statement keyword", head);
}

bool only_whitespace(const std::string& s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Script parse(const std::string& text) {
  Script out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    Statement st;
    st.line = line;
    if (only_whitespace(raw)) {
      st.payload = StBlank{};
      out.statements.push_back(st);
      continue;
    }
    std::size_t first = raw.find_first_not_of(" \t");
    if (raw[first] == '#') {
      st.payload = StComment{raw};
      out.statements.push_back(st);
      continue;
    }
    LineParser p(lex_line(raw, line), line);
    st.payload = parse_payload(p);
    p.expect_end();
    if (out.name.empty())
      if (const auto* b = std::get_if<StBegin>(&st.payload))
        out.name = b->name;
    out.statements.push_back(st);
  }
  return out;
}

Script parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::BadArgument, "cannot read script '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  Script s = parse(buf.str());
  if (s.name.empty()) s.name = path;
  return s;
}

// ---- printing ---------------------------------------------------------

namespace {

std::string term_str(const ComboTerm& t) {
  if (t.coeff == 1) return t.label;
  if (t.coeff == -1) return "-" + t.label;
  return std::to_string(t.coeff) + t.label;
}

std::string combo_str(const Combo& c) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ' ';
    out += term_str(c[i]);
  }
  return out;
}

std::string sign_str(Int s) { return s >= 0 ? "+" + std::to_string(s)
                                            : std::to_string(s); }

std::string quote(const std::string& s) { return "\"" + s + "\""; }

std::string parity_str(lattice::Parity p) {
  return p == lattice::Parity::Even ? "even" : "odd";
}

struct Printer {
  std::string operator()(const StBegin& s) const { return "begin " + s.name; }
  std::string operator()(const StAmbient& s) const {
    return "ambient " + s.label + " " + sign_str(s.square);
  }
  std::string operator()(const StCounts& s) const {
    return "counts " + std::to_string(s.zero) + " " + std::to_string(s.one) +
           " " + std::to_string(s.three) + " " + std::to_string(s.four);
  }
  std::string operator()(const StClosed& s) const {
    return std::string("closed ") + (s.value ? "true" : "false");
  }
  std::string operator()(const StHandle& s) const {
    std::string out = "handle " + s.label;
    if (s.cls) out += " class " + combo_str(*s.cls);
    if (s.framing) out += " framing " + std::to_string(*s.framing);
    if (s.links) {
      out += " links [";
      for (Int v : *s.links) out += " " + std::to_string(v);
      out += " ]";
    }
    return out;
  }
  std::string operator()(const StBlowup& s) const {
    std::string out = "blowup " + sign_str(s.sign) + " " + s.label;
    if (!s.strands.empty()) {
      out += " strands";
      for (const auto& [l, m] : s.strands)
        out += " " + l + " " + std::to_string(m);
    }
    return out;
  }
  std::string operator()(const StBlowdown& s) const {
    return "blowdown " + s.label;
  }
  std::string operator()(const StSlide& s) const {
    std::string out = "slide " + s.moving + " over " + s.over + " sign " +
                      sign_str(s.sign);
    if (s.lk) out += " lk " + std::to_string(*s.lk);
    return out;
  }
  std::string operator()(const StCancel& s) const {
    return "cancel " + std::to_string(s.one_index) + " " + s.two_label +
           " token " + quote(s.token);
  }
  std::string operator()(const StExchange& s) const {
    std::string out = "exchange " + std::to_string(s.one_index);
    if (s.as_label) out += " as " + *s.as_label;
    if (s.once_token) out += " once " + quote(*s.once_token);
    return out;
  }
  std::string operator()(const StRbd& s) const {
    std::string out = "rbd p " + std::to_string(s.p) + " handles [";
    for (const auto& l : s.labels) out += " " + l;
    out += " ]";
    if (s.bp_label) out += " label " + *s.bp_label;
    return out;
  }
  std::string operator()(const StCork& s) const {
    return "cork " + s.name + " link " + std::to_string(s.link);
  }
  std::string operator()(const StTwist& s) const {
    return "twist cork " + s.cork_name + " one " +
           std::to_string(s.one_index) + " two " + s.two_label;
  }
  std::string operator()(const StCertify& s) const {
    std::string out = "certify";
    for (const auto& f : s.facts) out += " fact " + quote(f);
    return out;
  }
  std::string operator()(const StAssume& s) const {
    return "assume " + quote(s.text);
  }
  std::string operator()(const StAssert& s) const {
    switch (s.kind) {
      case AssertKind::B2:
        return "assert b2 " + std::to_string(s.a);
      case AssertKind::Chi:
        return "assert chi " + std::to_string(s.a);
      case AssertKind::Sigma:
        return "assert sigma " + std::to_string(s.a);
      case AssertKind::Parity:
        return "assert parity " + parity_str(s.parity);
      case AssertKind::Framing:
        return "assert framing " + s.label + " " + std::to_string(s.a);
      case AssertKind::Class:
        return "assert class " + s.label + " " + combo_str(s.combo);
      case AssertKind::Ledger:
        return "assert ledger " + std::to_string(s.a) + " " +
               std::to_string(s.b) + " " + parity_str(s.parity);
      case AssertKind::Model:
        return "assert model " + std::to_string(s.a) + " " +
               std::to_string(s.b);
      case AssertKind::Gram: {
        std::string out = "assert gram [";
        for (const auto& l : s.labels) out += " " + l;
        out += " ] cp " + std::to_string(s.a);
        return out;
      }
      case AssertKind::Stable:
        return "assert stable " + std::to_string(s.r1) + " " +
               std::to_string(s.s1) + " " + parity_str(s.p1) + " " +
               std::to_string(s.r2) + " " + std::to_string(s.s2) + " " +
               parity_str(s.p2) + " " + (s.expected ? "true" : "false");
    }
    return "assert";
  }
  std::string operator()(const StComment& s) const { return s.text; }
  std::string operator()(const StBlank&) const { return ""; }
};

}  // namespace

std::string print(const Statement& st) {
  return std::visit(Printer{}, st.payload);
}

std::string print(const Script& s) {
  std::string out;
  for (const auto& st : s.statements) {
    out += print(st);
    out += '\n';
  }
  return out;
}

}  // namespace kirby::script
