#include "redei/io.hpp"

#include <charconv>
#include <istream>
#include <sstream>
#include <vector>

#include "redei/error.hpp"

namespace redei {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

[[noreturn]] void parse_fail(std::size_t line, std::size_t column, const std::string& what) {
  throw Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

std::uint64_t parse_uint(const Token& tok, std::size_t line) {
  std::uint64_t value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    parse_fail(line, tok.column, "expected a non-negative integer, got '" + std::string(tok.text) + "'");
  }
  return value;
}

struct RawSet {
  FieldSpec field;
  std::vector<std::pair<FieldElement, FieldElement>> pairs;
  std::vector<std::size_t> lines;
};

RawSet parse_raw(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<FieldSpec> field;
  std::vector<std::pair<FieldElement, FieldElement>> pairs;
  std::vector<std::size_t> pair_lines;
  while (std::getline(in, line)) {
    ++line_no;
    const auto toks = tokenize(line);
    if (toks.empty() || toks.front().text.front() == '#') continue;
    if (!field) {
      if (toks.size() != 4) parse_fail(line_no, 1, "header must be 'q p e modulus-code'");
      const std::uint64_t q = parse_uint(toks[0], line_no);
      const std::uint64_t p = parse_uint(toks[1], line_no);
      const std::uint64_t e = parse_uint(toks[2], line_no);
      const std::uint64_t code = parse_uint(toks[3], line_no);
      try {
        field = FieldSpec::construct(p, e);
      } catch (const Error& err) {
        parse_fail(line_no, toks[1].column, err.what());
      }
      if (field->q() != q) parse_fail(line_no, toks[0].column, "q does not equal p^e");
      if (field->modulus_code() != code) {
        parse_fail(line_no, toks[3].column,
                   "modulus code " + std::to_string(code) + " is not the canonical " +
                       std::to_string(field->modulus_code()));
      }
      continue;
    }
    if (toks.size() != 2) parse_fail(line_no, 1, "expected 'a-code b-code'");
    std::uint64_t vals[2];
    for (int k = 0; k < 2; ++k) {
      vals[k] = parse_uint(toks[k], line_no);
      if (vals[k] >= field->q()) {
        parse_fail(line_no, toks[k].column, "code " + std::to_string(vals[k]) + " is not below q");
      }
    }
    const std::pair<FieldElement, FieldElement> pr{FieldElement{static_cast<std::uint32_t>(vals[0])},
                                                   FieldElement{static_cast<std::uint32_t>(vals[1])}};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (pairs[i] == pr) {
        parse_fail(line_no, 1, "duplicate of line " + std::to_string(pair_lines[i]));
      }
    }
    pairs.push_back(pr);
    pair_lines.push_back(line_no);
  }
  if (!field) parse_fail(line_no + 1, 1, "missing header line");
  return {*field, std::move(pairs), std::move(pair_lines)};
}

Json slope_json(const Slope& s) {
  if (s.is_infinite()) return "inf";
  return s.value().code;
}

}  // namespace

FieldSpec field_for_order(std::uint64_t q) {
  if (q < 2) throw Error(ErrorCode::InvalidArgument, "field order must be a prime power >= 2");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  std::uint64_t e = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1) throw Error(ErrorCode::InvalidArgument, std::to_string(q) + " is not a prime power");
  return FieldSpec::construct(p, e);
}

std::string field_header(const FieldSpec& field) { return std::to_string(field.q()) + " " + field.describe(); }

PlanePointSet parse_point_set(std::istream& in) {
  RawSet raw = parse_raw(in);
  std::vector<Point> pts;
  pts.reserve(raw.pairs.size());
  for (const auto& [a, b] : raw.pairs) pts.push_back({a, b});
  return PlanePointSet(raw.field, std::move(pts));
}

PlanePointSet parse_point_set(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_point_set(in);
}

AffSet parse_aff_set(std::istream& in) {
  RawSet raw = parse_raw(in);
  std::vector<AffElement> elems;
  elems.reserve(raw.pairs.size());
  for (std::size_t i = 0; i < raw.pairs.size(); ++i) {
    const auto& [a, b] = raw.pairs[i];
    if (a == raw.field.zero()) parse_fail(raw.lines[i], 1, "affine element needs a nonzero a-code");
    elems.push_back({a, b});
  }
  return AffSet(raw.field, std::move(elems));
}

AffSet parse_aff_set(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_aff_set(in);
}

std::string format_point_set(const PlanePointSet& A) {
  std::ostringstream os;
  os << field_header(A.field()) << '\n';
  for (const Point& pt : A.points()) os << pt.a.code << ' ' << pt.b.code << '\n';
  return os.str();
}

std::string format_aff_set(const AffSet& A) {
  std::ostringstream os;
  os << field_header(A.field()) << '\n';
  for (const AffElement& g : A.elems()) os << g.a.code << ' ' << g.b.code << '\n';
  return os.str();
}

std::string format_polynomial(const Polynomial& f) {
  std::string out;
  for (FieldElement c : f.coeffs()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(c.code);
  }
  return out;
}

Polynomial parse_polynomial(const FieldSpec& field, std::string_view text) {
  std::vector<FieldElement> coeffs;
  for (const Token& tok : tokenize(text)) {
    const std::uint64_t v = parse_uint(tok, 1);
    if (v >= field.q()) parse_fail(1, tok.column, "coefficient code not below q");
    coeffs.push_back(FieldElement{static_cast<std::uint32_t>(v)});
  }
  return Polynomial(field, std::move(coeffs));
}

std::string format_slope(const Slope& s) { return s.is_infinite() ? "inf" : std::to_string(s.value().code); }

Slope parse_slope(const FieldSpec& field, std::string_view text) {
  if (text == "inf") return Slope::infinity();
  const auto toks = tokenize(text);
  if (toks.size() != 1) parse_fail(1, 1, "expected a slope code or 'inf'");
  const std::uint64_t v = parse_uint(toks[0], 1);
  if (v >= field.q()) parse_fail(1, toks[0].column, "slope code not below q");
  return Slope::finite(FieldElement{static_cast<std::uint32_t>(v)});
}

Json direction_json(const PlanePointSet& A) {
  const FieldSpec& field = A.field();
  const DirectionReport report = direction_set(A);
  Json j;
  j["q"] = field.q();
  j["size"] = A.size();
  Json dirs = Json::array();
  for (const Slope& s : report.directions) dirs.push_back(slope_json(s));
  j["D"] = std::move(dirs);
  j["n"] = report.n;
  j["collinear"] = report.collinear;
  j["l1"] = nullptr;
  j["l2"] = nullptr;
  j["lower"] = nullptr;
  j["upper"] = nullptr;
  j["holds"] = nullptr;
  j["exempt"] = nullptr;

  const auto count = report.directions.size();
  if (A.size() <= field.q()) {
    if (count > 1 && count < std::size_t{field.q()} + 1) {
      const DirectionBounds b = direction_bounds(A);
      j["l1"] = b.l1;
      j["l2"] = b.l2;
      j["lower"] = b.lower;
      if (b.upper) {
        j["upper"] = *b.upper;
      } else {
        j["upper"] = "trivial";
      }
    }
    const MaindirVerdict v = maindir_check(A);
    j["holds"] = v.exempt || v.holds;
    j["exempt"] = v.exempt;
  } else {
    j["holds"] = spans_all_check(A);
    j["exempt"] = false;
  }
  return j;
}

Json redei_json(const PlanePointSet& A, FieldElement y) {
  const FieldSpec& field = A.field();
  const DirectionReport report = direction_set(A);
  const ComplementRemainder cr = complement_and_remainder(A, y);
  Json j;
  j["q"] = field.q();
  j["size"] = A.size();
  j["slope"] = y.code;
  j["in_D"] = report.spans(Slope::finite(y));
  j["H"] = format_polynomial(redei_polynomial(A, y));
  j["f"] = format_polynomial(cr.f);
  j["g"] = format_polynomial(cr.g);
  j["lines_meeting"] = lines_meeting(A, y);
  j["l1"] = nullptr;
  j["l2"] = nullptr;
  if (!report.spans(Slope::infinity())) {
    j["note"] = "vertical direction not spanned; l1/l2 are defined after normalization";
  } else if (!report.spans(Slope::finite(y))) {
    j["note"] = "slope is not a direction of the set (g = -x)";
  } else {
    const SlopeDecomposition dec = slope_decomposition(A, y);
    if (dec.l1) j["l1"] = *dec.l1;
    j["l2"] = dec.l2;
    j["fully_reducible"] = format_polynomial(dec.fully_reducible);
    j["nonlinear"] = format_polynomial(dec.nonlinear);
    j["reduced_g"] = format_polynomial(dec.reduced_g);
  }
  return j;
}

Json bounds_json(const PlanePointSet& A) {
  const FieldSpec& field = A.field();
  const DirectionReport report = direction_set(A);
  const auto count = static_cast<std::int64_t>(report.directions.size());
  Json j;
  j["q"] = field.q();
  j["size"] = A.size();
  j["D_count"] = count;
  if (count == 1 || count == static_cast<std::int64_t>(field.q()) + 1) {
    j["degenerate"] = true;
    j["sandwich"] = nullptr;
  } else {
    const DirectionBounds b = direction_bounds(A);
    j["degenerate"] = false;
    Json s;
    s["l1"] = b.l1;
    s["l2"] = b.l2;
    s["lower"] = b.lower;
    if (b.upper) {
      s["upper"] = *b.upper;
    } else {
      s["upper"] = "trivial";
    }
    s["holds"] = b.lower <= count && (!b.upper || count <= *b.upper);
    j["sandwich"] = std::move(s);
  }
  const MaindirVerdict v = maindir_check(A);
  Json m;
  m["threshold"] = to_string(v.threshold);
  m["holds"] = v.holds;
  m["exempt"] = v.exempt;
  j["maindir"] = std::move(m);
  return j;
}

Json classification_json(const AffSet& A, const ClassificationReport& report) {
  Json j;
  j["q"] = A.field().q();
  j["size"] = report.size;
  j["C"] = to_string(report.tripling_c);
  j["regime"] = std::string(to_string(report.regime));
  if (report.case_a) {
    j["case_a"] = Json{{"x", report.case_a->code}};
  } else {
    j["case_a"] = nullptr;
  }
  if (report.case_b) {
    Json b;
    b["pi"] = report.case_b->pi_size;
    std::string bound = to_string(report.case_b->bound);
    if (report.case_b->sqrt2_coeff != 0) bound += "+" + to_string(report.case_b->sqrt2_coeff) + "*sqrt(2)";
    b["bound"] = bound;
    b["holds"] = report.case_b->holds;
    j["case_b"] = std::move(b);
  } else {
    j["case_b"] = nullptr;
  }
  if (report.case_c) {
    Json c;
    c["pi"] = report.case_c->pi_size;
    c["bound"] = to_string(report.case_c->bound);
    c["holds"] = report.case_c->holds;
    c["u_covered"] = report.case_c->u_covered;
    j["case_c"] = std::move(c);
  } else {
    j["case_c"] = nullptr;
  }
  j["holds"] = report.disjunction_holds;
  return j;
}

}  // namespace redei
