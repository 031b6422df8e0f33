#include "olk/stepfn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "olk/error.hpp"

namespace olk {

namespace {

// Alternating tails expanded onto finite cells past this count are refused.
constexpr double kMaxExpandedCells = 1e6;

bool is_odd_cell(double t) {
  const double cell = std::floor(t);
  return std::fmod(cell, 2.0) != 0.0;
}

// Finite pieces covering [from, to) with the tail's values.
void expand_tail(const Tail& tail, double to, std::vector<Piece>& out) {
  if (!(to > tail.start)) return;
  if (tail.is_constant()) {
    out.push_back({tail.start, to - tail.start, tail.even_value});
    return;
  }
  if (std::ceil(to) - std::floor(tail.start) > kMaxExpandedCells) {
    throw Error(ErrorKind::InvalidArgument,
                "alternating tail would expand into too many cells");
  }
  double t = tail.start;
  while (t < to) {
    const double next = std::min(std::floor(t) + 1.0, to);
    out.push_back({t, next - t, tail.value_at(t)});
    t = next;
  }
}

double apply(CombineOp op, double a, double b) {
  return op == CombineOp::Add ? a + b : a - b;
}

double parse_number(const std::string& token, std::size_t line) {
  if (token == "inf" || token == "+inf" || token == "Inf" || token == "infinity") {
    return kInfinity;
  }
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end == token.c_str() || *end != '\0' || std::isnan(value)) {
    throw ParseError("line " + std::to_string(line),
                     "line " + std::to_string(line) + ": cannot parse number '" +
                         token + "'");
  }
  return value;
}

}  // namespace

double Tail::value_at(double t) const {
  return is_odd_cell(t) ? odd_value : even_value;
}

StepFunction StepFunction::make(double domain_len, std::vector<Piece> pieces,
                                std::optional<Tail> tail) {
  if (!(domain_len > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "domain length must be positive");
  }
  for (auto it = pieces.begin(); it != pieces.end();) {
    if (std::isinf(it->length) && it->length > 0.0) {
      if (tail) {
        throw Error(ErrorKind::InvalidArgument,
                    "at most one piece may have infinite length");
      }
      tail = Tail{it->start, it->value, it->value};
      it = pieces.erase(it);
    } else {
      ++it;
    }
  }
  for (const auto& piece : pieces) {
    if (!std::isfinite(piece.start) || piece.start < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "piece start must be finite and >= 0");
    }
    if (!(piece.length > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "piece length must be positive");
    }
    if (std::isnan(piece.value)) {
      throw Error(ErrorKind::InvalidArgument, "piece value is NaN");
    }
    if (piece.end() > domain_len) {
      throw Error(ErrorKind::InvalidArgument, "piece extends past the domain");
    }
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& a, const Piece& b) { return a.start < b.start; });
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    if (pieces[i - 1].end() > pieces[i].start) {
      throw Error(ErrorKind::InvalidArgument, "pieces overlap");
    }
  }
  if (tail) {
    if (std::isfinite(domain_len)) {
      throw Error(ErrorKind::InvalidArgument,
                  "infinite pieces require an infinite domain");
    }
    if (!std::isfinite(tail->start) || tail->start < 0.0 ||
        std::isnan(tail->even_value) || std::isnan(tail->odd_value)) {
      throw Error(ErrorKind::InvalidArgument, "invalid infinite piece");
    }
    if (!pieces.empty() && pieces.back().end() > tail->start) {
      throw Error(ErrorKind::InvalidArgument, "infinite piece overlaps a finite piece");
    }
  }

  StepFunction f;
  f.domain_len_ = domain_len;
  for (const auto& piece : pieces) {
    if (piece.value == 0.0) continue;
    if (!f.pieces_.empty()) {
      auto& back = f.pieces_.back();
      if (back.end() == piece.start && back.value == piece.value) {
        back.length += piece.length;
        continue;
      }
    }
    f.pieces_.push_back(piece);
  }
  if (tail && !(tail->even_value == 0.0 && tail->odd_value == 0.0)) {
    if (tail->is_constant()) {
      while (!f.pieces_.empty() && f.pieces_.back().end() == tail->start &&
             f.pieces_.back().value == tail->even_value) {
        tail->start = f.pieces_.back().start;
        f.pieces_.pop_back();
      }
    }
    f.tail_ = tail;
  }
  return f;
}

StepFunction StepFunction::zero(double domain_len) { return make(domain_len, {}); }

StepFunction StepFunction::indicator(double domain_len, double start, double length,
                                     double value) {
  return make(domain_len, {{start, length, value}});
}

double StepFunction::finite_extent() const noexcept {
  return pieces_.empty() ? 0.0 : pieces_.back().end();
}

double StepFunction::sup_abs() const noexcept {
  double m = 0.0;
  for (const auto& piece : pieces_) m = std::max(m, std::fabs(piece.value));
  if (tail_) {
    m = std::max({m, std::fabs(tail_->even_value), std::fabs(tail_->odd_value)});
  }
  return m;
}

double StepFunction::operator()(double t) const {
  if (!(t >= 0.0) || t >= domain_len_) {
    throw Error(ErrorKind::InvalidArgument, "evaluation point outside [0, gamma)");
  }
  if (tail_ && t >= tail_->start) return tail_->value_at(t);
  const auto it = std::upper_bound(
      pieces_.begin(), pieces_.end(), t,
      [](double value, const Piece& piece) { return value < piece.start; });
  if (it == pieces_.begin()) return 0.0;
  const auto& piece = *std::prev(it);
  return t < piece.end() ? piece.value : 0.0;
}

double Rearrangement::total_measure() const noexcept {
  double total = 0.0;
  for (const auto& level : levels) total += level.measure;
  return total;
}

double Rearrangement::operator()(double t) const {
  double cursor = 0.0;
  for (const auto& level : levels) {
    cursor += level.measure;
    if (t < cursor) return level.value;
  }
  return 0.0;
}

double Rearrangement::distribution(double theta) const {
  double total = 0.0;
  for (const auto& level : levels) {
    if (level.value > theta) total += level.measure;
  }
  return total;
}

double distribution(const StepFunction& x, double theta) {
  if (!(theta >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "distribution requires theta >= 0");
  }
  double total = 0.0;
  for (const auto& piece : x.pieces()) {
    if (std::fabs(piece.value) > theta) total += piece.length;
  }
  if (const auto& tail = x.tail()) {
    if (std::max(std::fabs(tail->even_value), std::fabs(tail->odd_value)) > theta) {
      return kInfinity;
    }
  }
  return total;
}

Rearrangement rearrange(const StepFunction& x) {
  std::map<double, double, std::greater<>> measure_by_value;
  for (const auto& piece : x.pieces()) {
    measure_by_value[std::fabs(piece.value)] += piece.length;
  }
  if (const auto& tail = x.tail()) {
    const double top = std::max(std::fabs(tail->even_value), std::fabs(tail->odd_value));
    measure_by_value[top] = kInfinity;
  }
  Rearrangement r;
  for (const auto& [value, measure] : measure_by_value) {
    r.levels.push_back({value, measure});
    // An infinite level hides every smaller value.
    if (std::isinf(measure)) break;
  }
  return r;
}

StepFunction combine(const StepFunction& x, const StepFunction& y, CombineOp op) {
  if (x.domain_len() != y.domain_len()) {
    throw Error(ErrorKind::DomainMismatch, "step functions live on different domains");
  }
  const auto& tx = x.tail();
  const auto& ty = y.tail();

  std::optional<double> tail_start;
  if (tx || ty) {
    double t = 0.0;
    if (tx) t = std::max(t, tx->start);
    else t = std::max(t, x.finite_extent());
    if (ty) t = std::max(t, ty->start);
    else t = std::max(t, y.finite_extent());
    tail_start = t;
  }

  auto expanded = [&](const StepFunction& f) {
    std::vector<Piece> out = f.pieces();
    if (f.tail() && tail_start) expand_tail(*f.tail(), *tail_start, out);
    return out;
  };
  const std::vector<Piece> px = expanded(x);
  const std::vector<Piece> py = expanded(y);

  std::vector<double> cuts;
  cuts.reserve(2 * (px.size() + py.size()));
  for (const auto* list : {&px, &py}) {
    for (const auto& piece : *list) {
      cuts.push_back(piece.start);
      cuts.push_back(piece.end());
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto value_on = [](const std::vector<Piece>& list, std::size_t& cursor, double t) {
    while (cursor < list.size() && list[cursor].end() <= t) ++cursor;
    if (cursor < list.size() && list[cursor].start <= t) return list[cursor].value;
    return 0.0;
  };

  std::vector<Piece> result;
  std::size_t ix = 0;
  std::size_t iy = 0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k];
    const double b = cuts[k + 1];
    const double value = apply(op, value_on(px, ix, a), value_on(py, iy, a));
    if (value != 0.0) result.push_back({a, b - a, value});
  }

  std::optional<Tail> tail;
  if (tail_start) {
    const double xe = tx ? tx->even_value : 0.0;
    const double xo = tx ? tx->odd_value : 0.0;
    const double ye = ty ? ty->even_value : 0.0;
    const double yo = ty ? ty->odd_value : 0.0;
    tail = Tail{*tail_start, apply(op, xe, ye), apply(op, xo, yo)};
  }
  return StepFunction::make(x.domain_len(), std::move(result), tail);
}

StepFunction scale(const StepFunction& x, double c) {
  if (std::isnan(c)) throw Error(ErrorKind::InvalidArgument, "scale factor is NaN");
  if (c == 0.0) return StepFunction::zero(x.domain_len());
  std::vector<Piece> pieces = x.pieces();
  for (auto& piece : pieces) piece.value *= c;
  std::optional<Tail> tail = x.tail();
  if (tail) {
    tail->even_value *= c;
    tail->odd_value *= c;
  }
  return StepFunction::make(x.domain_len(), std::move(pieces), tail);
}

StepFunction half_sum(const StepFunction& x, const StepFunction& y) {
  return scale(combine(x, y, CombineOp::Add), 0.5);
}

StepFunction half_difference(const StepFunction& x, const StepFunction& y) {
  return scale(combine(x, y, CombineOp::Sub), 0.5);
}

StepFunction compose_phi(const OrliczFunction& f, const StepFunction& x) {
  std::vector<Piece> pieces = x.pieces();
  for (auto& piece : pieces) piece.value = f(piece.value);
  std::optional<Tail> tail = x.tail();
  if (tail) {
    tail->even_value = f(tail->even_value);
    tail->odd_value = f(tail->odd_value);
  }
  return StepFunction::make(x.domain_len(), std::move(pieces), tail);
}

MeasurePreservingMap::MeasurePreservingMap(std::vector<MapSegment> segments)
    : segments_(std::move(segments)) {}

double MeasurePreservingMap::measure() const noexcept {
  double total = 0.0;
  for (const auto& s : segments_) total += s.length;
  return total;
}

bool MeasurePreservingMap::is_identity() const noexcept {
  return std::all_of(segments_.begin(), segments_.end(),
                     [](const MapSegment& s) { return s.dst == s.src; });
}

double MeasurePreservingMap::forward(double t) const {
  for (const auto& s : segments_) {
    if (t >= s.dst && t < s.dst + s.length) return s.src + (t - s.dst);
  }
  throw Error(ErrorKind::InvalidArgument, "point outside the domain of sigma");
}

double MeasurePreservingMap::inverse(double s) const {
  for (const auto& seg : segments_) {
    if (s >= seg.src && s < seg.src + seg.length) return seg.dst + (s - seg.src);
  }
  throw Error(ErrorKind::InvalidArgument, "point outside the support");
}

Alignment align(const StepFunction& x) {
  if (x.has_infinite_support()) {
    throw Error(ErrorKind::InvalidArgument,
                "align requires finite-measure support");
  }
  std::vector<Piece> order = x.pieces();
  std::stable_sort(order.begin(), order.end(), [](const Piece& a, const Piece& b) {
    return std::fabs(a.value) > std::fabs(b.value);
  });

  std::vector<Piece> layout;
  std::vector<MapSegment> segments;
  double cursor = 0.0;
  for (const auto& piece : order) {
    layout.push_back({cursor, piece.length, std::fabs(piece.value)});
    if (!segments.empty()) {
      auto& back = segments.back();
      if (back.dst + back.length == cursor && back.src + back.length == piece.start) {
        back.length += piece.length;
        cursor += piece.length;
        continue;
      }
    }
    segments.push_back({cursor, piece.start, piece.length});
    cursor += piece.length;
  }
  return {StepFunction::make(x.domain_len(), std::move(layout)),
          MeasurePreservingMap(std::move(segments))};
}

StepFunction parse_steps(std::string_view text, double domain_len) {
  std::vector<Piece> pieces;
  std::optional<Tail> tail;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string token; fields >> token;) tokens.push_back(token);
    if (tokens.empty()) continue;
    if (tokens.size() != 3 && tokens.size() != 4) {
      throw ParseError("line " + std::to_string(line_no),
                       "line " + std::to_string(line_no) +
                           ": expected 'start length value [odd_value]'");
    }
    const double start = parse_number(tokens[0], line_no);
    const double length = parse_number(tokens[1], line_no);
    const double value = parse_number(tokens[2], line_no);
    if (tokens.size() == 4 || std::isinf(length)) {
      if (!std::isinf(length)) {
        throw ParseError("line " + std::to_string(line_no),
                         "line " + std::to_string(line_no) +
                             ": an odd-cell value is only allowed on an infinite line");
      }
      if (tail) {
        throw ParseError("line " + std::to_string(line_no),
                         "line " + std::to_string(line_no) +
                             ": at most one infinite line is allowed");
      }
      const double odd = tokens.size() == 4 ? parse_number(tokens[3], line_no) : value;
      tail = Tail{start, value, odd};
      continue;
    }
    pieces.push_back({start, length, value});
  }
  try {
    return StepFunction::make(domain_len, std::move(pieces), tail);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError("steps", std::string("invalid step function: ") + e.what());
  }
}

std::string format_steps(const StepFunction& x) {
  std::string out;
  char buf[160];
  for (const auto& piece : x.pieces()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", piece.start, piece.length,
                  piece.value);
    out += buf;
  }
  if (const auto& tail = x.tail()) {
    if (tail->is_constant()) {
      std::snprintf(buf, sizeof buf, "%.17g inf %.17g\n", tail->start, tail->even_value);
    } else {
      std::snprintf(buf, sizeof buf, "%.17g inf %.17g %.17g\n", tail->start,
                    tail->even_value, tail->odd_value);
    }
    out += buf;
  }
  return out;
}

}  // namespace olk
