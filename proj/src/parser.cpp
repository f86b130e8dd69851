#include "crncomp/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace crncomp {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message, const std::string& path)
    : std::runtime_error(path.empty() ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                                            message
                                      : path + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                                            message),
      line_(line),
      column_(column),
      message_(message),
      path_(path) {}

namespace {

enum class Tok { Ident, Integer, Number, Plus, Arrow, BiArrow, Semicolon, Equals, Comma, End };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t column;  // 1-based
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Integer: return "integer";
    case Tok::Number: return "number";
    case Tok::Plus: return "'+'";
    case Tok::Arrow: return "'->'";
    case Tok::BiArrow: return "'<=>'";
    case Tok::Semicolon: return "';'";
    case Tok::Equals: return "'='";
    case Tok::Comma: return "','";
    case Tok::End: return "end of line";
  }
  return "token";
}

std::vector<Token> lex_line(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    const std::size_t col = i + 1;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < line.size() && ident_char(line[j])) ++j;
      out.push_back({Tok::Ident, line.substr(i, j - i), col});
      i = j;
    } else if (digit(c) || (c == '.' && i + 1 < line.size() && digit(line[i + 1]))) {
      std::size_t j = i;
      bool is_int = true;
      while (j < line.size() && digit(line[j])) ++j;
      if (j < line.size() && line[j] == '.') {
        is_int = false;
        ++j;
        while (j < line.size() && digit(line[j])) ++j;
      }
      // Exponent only when followed by digits, so "2e" + identifier stays a term.
      if (j < line.size() && (line[j] == 'e' || line[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < line.size() && (line[k] == '+' || line[k] == '-')) ++k;
        if (k < line.size() && digit(line[k])) {
          is_int = false;
          j = k;
          while (j < line.size() && digit(line[j])) ++j;
        }
      }
      out.push_back({is_int ? Tok::Integer : Tok::Number, line.substr(i, j - i), col});
      i = j;
    } else if (c == '+') {
      out.push_back({Tok::Plus, line.substr(i, 1), col});
      ++i;
    } else if (line.substr(i, 2) == "->") {
      out.push_back({Tok::Arrow, line.substr(i, 2), col});
      i += 2;
    } else if (line.substr(i, 3) == "<=>") {
      out.push_back({Tok::BiArrow, line.substr(i, 3), col});
      i += 3;
    } else if (c == ';') {
      out.push_back({Tok::Semicolon, line.substr(i, 1), col});
      ++i;
    } else if (c == '=') {
      out.push_back({Tok::Equals, line.substr(i, 1), col});
      ++i;
    } else if (c == ',') {
      out.push_back({Tok::Comma, line.substr(i, 1), col});
      ++i;
    } else {
      const auto byte = static_cast<unsigned char>(c);
      std::string shown = std::isprint(byte) ? std::string(1, c) : "\\x" + std::to_string(byte);
      throw ParseError(line_no, col, "unexpected character '" + shown + "'");
    }
  }
  out.push_back({Tok::End, {}, line.size() + 1});
  return out;
}

struct RawTerm {
  Coefficient coeff;
  std::string_view name;
  std::size_t column;
};

struct RawReaction {
  std::size_t line;
  std::vector<RawTerm> lhs;
  std::vector<RawTerm> rhs;
  bool reversible;
  std::vector<double> rates;
};

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, std::size_t line) : toks_(std::move(tokens)), line_(line) {}

  RawReaction reaction() {
    RawReaction r{line_, {}, {}, false, {}};
    r.lhs = complex();
    if (peek().kind == Tok::BiArrow) {
      r.reversible = true;
    } else if (peek().kind != Tok::Arrow) {
      fail(peek(), "expected '->' or '<=>'");
    }
    ++pos_;
    r.rhs = complex();
    expect(Tok::Semicolon, "expected ';' before rate annotation");
    const Token& k = expect(Tok::Ident, "expected 'k='");
    if (k.text != "k") fail(k, "expected 'k='");
    expect(Tok::Equals, "expected '=' after 'k'");
    r.rates.push_back(rate());
    while (peek().kind == Tok::Comma) {
      ++pos_;
      r.rates.push_back(rate());
    }
    if (peek().kind != Tok::End) fail(peek(), std::string("unexpected ") + describe(peek().kind));
    const std::size_t want = r.reversible ? 2 : 1;
    if (r.rates.size() != want)
      throw ParseError(line_, k.column,
                       r.reversible ? "'<=>' needs exactly two rates (forward, backward)"
                                    : "'->' needs exactly one rate");
    return r;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(line_, t.column, msg); }

  const Token& expect(Tok kind, const char* msg) {
    if (peek().kind != kind) fail(peek(), msg);
    return toks_[pos_++];
  }

  std::vector<RawTerm> complex() {
    std::vector<RawTerm> terms;
    if (peek().kind == Tok::Integer && peek().text == "0" && toks_[pos_ + 1].kind != Tok::Ident) {
      ++pos_;
      return terms;
    }
    terms.push_back(term());
    while (peek().kind == Tok::Plus) {
      ++pos_;
      terms.push_back(term());
    }
    return terms;
  }

  RawTerm term() {
    Coefficient coeff = 1;
    const std::size_t start_col = peek().column;
    if (peek().kind == Tok::Integer) {
      const Token& t = toks_[pos_++];
      std::uint64_t value = 0;
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
      if (ec != std::errc{} || value > kMaxCoefficient) fail(t, "stoichiometric coefficient out of range");
      if (value == 0) fail(t, "stoichiometric coefficient must be positive");
      coeff = static_cast<Coefficient>(value);
    }
    if (peek().kind != Tok::Ident) fail(peek(), "expected species name");
    const Token& name = toks_[pos_++];
    return RawTerm{coeff, name.text, start_col};
  }

  double rate() {
    const Token& t = peek();
    if (t.kind != Tok::Number && t.kind != Tok::Integer) fail(t, "expected rate constant");
    ++pos_;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size() || !std::isfinite(value))
      fail(t, "invalid rate constant");
    if (!(value > 0.0)) fail(t, "rate constant must be positive");
    return value;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

}  // namespace

NetworkDocument parse_network(std::string_view text, const ParseOptions& options) {
  std::vector<std::string> names;
  std::unordered_map<std::string, SpeciesId> index;
  std::vector<std::pair<SpeciesId, std::size_t>> inputs;   // id, line
  std::vector<std::pair<SpeciesId, std::size_t>> outputs;  // id, line
  bool has_inputs = false;
  bool has_outputs = false;
  std::vector<RawReaction> raw;

  auto declare = [&](std::string_view name) -> SpeciesId {
    auto [it, inserted] = index.emplace(std::string(name), names.size());
    if (inserted) names.emplace_back(name);
    return it->second;
  };

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = strip_comment(text.substr(start, end - start));
    ++line_no;
    start = end + 1;
    if (blank(line)) continue;

    auto toks = lex_line(line, line_no);
    const Token& head = toks.front();
    const bool decl =
        head.kind == Tok::Ident && (head.text == "species" || head.text == "inputs" || head.text == "outputs");
    if (!decl) {
      raw.push_back(LineParser(std::move(toks), line_no).reaction());
      continue;
    }
    if (toks.size() < 3) throw ParseError(line_no, toks[1].column, "declaration needs at least one species");
    for (std::size_t i = 1; i + 1 < toks.size(); ++i) {
      const Token& t = toks[i];
      if (t.kind != Tok::Ident) throw ParseError(line_no, t.column, "expected species name in declaration");
      if (t.text == "species" || t.text == "inputs" || t.text == "outputs")
        throw ParseError(line_no, t.column, "reserved word used as species name");
      if (head.text == "species") {
        if (index.contains(std::string(t.text)))
          throw ParseError(line_no, t.column, "species declared twice: " + std::string(t.text));
        declare(t.text);
        continue;
      }
      const SpeciesId id = declare(t.text);
      auto& own = head.text == "inputs" ? inputs : outputs;
      auto& other = head.text == "inputs" ? outputs : inputs;
      auto has = [id](const auto& v) {
        return std::any_of(v.begin(), v.end(), [id](const auto& p) { return p.first == id; });
      };
      if (has(own)) throw ParseError(line_no, t.column, "species listed twice: " + std::string(t.text));
      if (has(other))
        throw ParseError(line_no, t.column, "species is both input and output: " + std::string(t.text));
      own.emplace_back(id, line_no);
    }
    if (head.text == "inputs") has_inputs = true;
    if (head.text == "outputs") has_outputs = true;
  }

  NetworkDocument doc;
  std::vector<Reaction> reactions;
  auto build = [&](const std::vector<RawTerm>& terms, std::size_t line) {
    std::vector<Complex::Term> out;
    for (const auto& t : terms) {
      auto it = index.find(std::string(t.name));
      SpeciesId id;
      if (it != index.end()) {
        id = it->second;
      } else if (options.auto_declare) {
        id = declare(t.name);
      } else {
        throw ParseError(line, t.column, "unknown species: " + std::string(t.name));
      }
      out.emplace_back(id, t.coeff);
    }
    try {
      return Complex(std::move(out));
    } catch (const std::out_of_range& e) {
      throw ParseError(line, terms.front().column, e.what());
    }
  };
  for (const auto& r : raw) {
    Complex lhs = build(r.lhs, r.line);
    Complex rhs = build(r.rhs, r.line);
    if (lhs == rhs) throw ParseError(r.line, 1, "reactant and product complexes are identical");
    reactions.emplace_back(lhs, rhs, RateLaw::constant(r.rates[0]));
    doc.reaction_lines.push_back(r.line);
    if (r.reversible) {
      reactions.emplace_back(rhs, lhs, RateLaw::constant(r.rates[1]));
      doc.reaction_lines.push_back(r.line);
    }
  }

  doc.crn = Crn(names, std::move(reactions));
  if (has_inputs || has_outputs) {
    std::vector<SpeciesId> in, out;
    for (auto& p : inputs) in.push_back(p.first);
    for (auto& p : outputs) out.push_back(p.first);
    std::vector<bool> assigned(names.size(), false);
    for (auto id : in) assigned[id] = true;
    for (auto id : out) assigned[id] = true;
    for (SpeciesId id = 0; id < names.size(); ++id) {
      if (assigned[id]) continue;
      if (has_inputs && has_outputs)
        throw ParseError(line_no, 1, "species is neither input nor output: " + names[id]);
      (has_inputs ? out : in).push_back(id);
    }
    if (in.empty() || out.empty())
      throw ParseError(line_no, 1, "an msCRC needs at least one input and one output species");
    doc.mscrc.emplace(doc.crn, std::move(in), std::move(out));
  }
  return doc;
}

MsCrc parse_mscrc(std::string_view text, const ParseOptions& options) {
  auto doc = parse_network(text, options);
  if (!doc.mscrc) throw ParseError(1, 1, "network declares no inputs or outputs");
  return std::move(*doc.mscrc);
}

NetworkDocument load_network(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_network(ss.str(), options);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), e.message(), path);
  }
}

std::string format_number(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_complex(const Complex& c, const Crn& crn) {
  if (c.empty()) return "0";
  std::string out;
  for (const auto& [id, coeff] : c.terms()) {
    if (!out.empty()) out += " + ";
    if (coeff != 1) out += std::to_string(coeff) + " ";
    out += crn.name(id);
  }
  return out;
}

namespace {

std::string format_body(const Crn& crn, const FormatOptions& options, std::string declarations) {
  std::string out;
  for (const auto& line : options.header_comments) out += "# " + line + "\n";
  if (crn.species_count() > 0) {
    out += "species";
    for (const auto& s : crn.species()) out += " " + s.name;
    out += "\n";
  }
  out += declarations;
  const auto& rs = crn.reactions();
  const bool fold = options.reaction_comments.empty();
  for (std::size_t j = 0; j < rs.size(); ++j) {
    const auto& r = rs[j];
    const bool pair = fold && j + 1 < rs.size() && rs[j + 1].reactant == r.product && rs[j + 1].product == r.reactant &&
                      r.rate.is_constant() && rs[j + 1].rate.is_constant();
    out += format_complex(r.reactant, crn);
    out += pair ? " <=> " : " -> ";
    out += format_complex(r.product, crn);
    out += " ; k=" + format_number(r.rate.coefficient());
    if (pair) {
      out += "," + format_number(rs[j + 1].rate.coefficient());
      ++j;
    }
    if (j < options.reaction_comments.size() && !options.reaction_comments[j].empty())
      out += "  # " + options.reaction_comments[j];
    out += "\n";
  }
  return out;
}

}  // namespace

std::string format_network(const Crn& crn, const FormatOptions& options) { return format_body(crn, options, {}); }

std::string format_network(const MsCrc& net, const FormatOptions& options) {
  std::string decl = "inputs";
  for (const auto& n : net.input_names()) decl += " " + n;
  decl += "\noutputs";
  for (const auto& n : net.output_names()) decl += " " + n;
  decl += "\n";
  return format_body(net.crn(), options, decl);
}

}  // namespace crncomp
