#include "aic/lasso.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "aic/text.hpp"

namespace aic {

namespace {

constexpr size_t kOrbitPeriodCap = 10000;

void require_same_lattice(const lasso& a, const lasso& b) {
  if (a.lat() != b.lat() && a.lat()->key() != b.lat()->key())
    throw error("LatticeMismatch", "operands live in " + a.lat()->key() + " and " +
                                       b.lat()->key());
}

}  // namespace

lasso::lasso(lattice_ptr lat, std::vector<elem> prefix, std::vector<elem> period)
    : lat_(std::move(lat)), prefix_(std::move(prefix)), period_(std::move(period)) {
  if (!lat_) throw error("InvalidLasso", "null lattice");
  if (period_.empty()) throw error("InvalidLasso", "period must be non-empty");
  for (elem v : prefix_)
    if (v < 0 || v >= lat_->size()) throw error("InvalidLasso", "prefix entry out of range");
  for (elem v : period_)
    if (v < 0 || v >= lat_->size()) throw error("InvalidLasso", "period entry out of range");

  // primitivize: shrink the period to its shortest repeating word
  const size_t m = period_.size();
  for (size_t d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    bool rep = true;
    for (size_t i = d; i < m && rep; ++i)
      if (period_[i] != period_[i % d]) rep = false;
    if (rep) {
      period_.resize(d);
      break;
    }
  }
  // absorb the prefix tail: while the last prefix entry equals the last
  // period entry, the prefix can shrink by rotating the period right
  while (!prefix_.empty() && prefix_.back() == period_.back()) {
    prefix_.pop_back();
    period_.insert(period_.begin(), period_.back());
    period_.pop_back();
  }
}

lasso lasso::flat(lattice_ptr lat, elem v) { return lasso(std::move(lat), {}, {v}); }

elem lasso::at(size_t n) const {
  if (n < prefix_.size()) return prefix_[n];
  return period_[(n - prefix_.size()) % period_.size()];
}

std::string lasso::str() const {
  std::string s = "<";
  for (size_t i = 0; i < prefix_.size(); ++i)
    s += (i ? "," : "") + lat_->elem_name(prefix_[i]);
  s += "|";
  for (size_t i = 0; i < period_.size(); ++i)
    s += (i ? "," : "") + lat_->elem_name(period_[i]);
  s += ">";
  return s;
}

lasso lasso::parse(const lattice_ptr& lat, const std::string& input) {
  const std::string s = text::trim(input);
  if (s.size() < 3 || s.front() != '<' || s.back() != '>')
    throw error("ParseError", "lasso literal must look like <p0,p1|q0>: " + input);
  auto halves = text::split_top(s.substr(1, s.size() - 2), '|');
  if (halves.size() != 2)
    throw error("ParseError", "lasso literal needs exactly one '|': " + input);
  auto read = [&](const std::string& csv, bool allow_empty) {
    std::vector<elem> out;
    if (text::trim(csv).empty()) {
      if (allow_empty) return out;
      throw error("ParseError", "lasso period must be non-empty: " + input);
    }
    for (const auto& name : text::split_top(csv, ',')) out.push_back(lat->require_elem(name));
    return out;
  };
  return lasso(lat, read(halves[0], true), read(halves[1], false));
}

bool lasso_eq(const lasso& a, const lasso& b) {
  require_same_lattice(a, b);
  const size_t w = std::max(a.prefix().size(), b.prefix().size()) +
                   std::lcm(a.period().size(), b.period().size());
  for (size_t n = 0; n < w; ++n)
    if (a.at(n) != b.at(n)) return false;
  return true;
}

bool lasso_leq(const lasso& a, const lasso& b) {
  require_same_lattice(a, b);
  const auto& lat = *a.lat();
  const size_t w = std::max(a.prefix().size(), b.prefix().size()) +
                   std::lcm(a.period().size(), b.period().size());
  for (size_t n = 0; n < w; ++n)
    if (!lat.leq(a.at(n), b.at(n))) return false;
  return true;
}

std::set<elem> head_set(const lasso& a) {
  std::set<elem> s(a.prefix().begin(), a.prefix().end());
  s.insert(a.period().begin(), a.period().end());
  return s;
}

lasso op_bot(const lattice_ptr& lat) { return lasso::flat(lat, lat->bot()); }
lasso op_top(const lattice_ptr& lat) { return lasso::flat(lat, lat->top()); }

namespace {

template <typename Op>
lasso pointwise(const lasso& a, const lasso& b, Op&& op) {
  require_same_lattice(a, b);
  const size_t p = std::max(a.prefix().size(), b.prefix().size());
  const size_t l = std::lcm(a.period().size(), b.period().size());
  std::vector<elem> prefix(p), period(l);
  for (size_t n = 0; n < p; ++n) prefix[n] = op(a.at(n), b.at(n));
  for (size_t i = 0; i < l; ++i) period[i] = op(a.at(p + i), b.at(p + i));
  return lasso(a.lat(), std::move(prefix), std::move(period));
}

}  // namespace

lasso op_join(const lasso& a, const lasso& b) {
  const auto lat = a.lat();
  return pointwise(a, b, [&](elem x, elem y) { return lat->join(x, y); });
}

lasso op_meet(const lasso& a, const lasso& b) {
  const auto lat = a.lat();
  return pointwise(a, b, [&](elem x, elem y) { return lat->meet(x, y); });
}

lasso op_head(const lasso& a) { return lasso::flat(a.lat(), a.at(0)); }

lasso op_shift(const lasso& a) {
  std::vector<elem> prefix = a.prefix(), period = a.period();
  if (!prefix.empty()) {
    prefix.erase(prefix.begin());
  } else {
    period.push_back(period.front());
    period.erase(period.begin());
  }
  return lasso(a.lat(), std::move(prefix), std::move(period));
}

lasso op_majorum(const lasso& a) {
  const auto& lat = *a.lat();
  elem tail = a.period()[0];
  for (elem v : a.period()) tail = lat.join(tail, v);
  std::vector<elem> prefix(a.prefix().size());
  elem acc = tail;
  for (size_t i = a.prefix().size(); i-- > 0;) {
    acc = lat.join(a.prefix()[i], acc);
    prefix[i] = acc;
  }
  return lasso(a.lat(), std::move(prefix), {tail});
}

lasso op_minorum(const lasso& a) {
  const auto& lat = *a.lat();
  elem tail = a.period()[0];
  for (elem v : a.period()) tail = lat.meet(tail, v);
  std::vector<elem> prefix(a.prefix().size());
  elem acc = tail;
  for (size_t i = a.prefix().size(); i-- > 0;) {
    acc = lat.meet(a.prefix()[i], acc);
    prefix[i] = acc;
  }
  return lasso(a.lat(), std::move(prefix), {tail});
}

lasso op_apply(const monotone_map& f, const lasso& a) {
  if (f.lat() != a.lat() && f.lat()->key() != a.lat()->key())
    throw error("LatticeMismatch", "function and sequence lattices differ");
  std::vector<elem> prefix, period;
  for (elem v : a.prefix()) prefix.push_back(f(v));
  for (elem v : a.period()) period.push_back(f(v));
  return lasso(a.lat(), std::move(prefix), std::move(period));
}

lasso op_orbit(const monotone_map& f, const lasso& a) {
  if (f.lat() != a.lat() && f.lat()->key() != a.lat()->key())
    throw error("LatticeMismatch", "function and sequence lattices differ");
  const int n = a.lat()->size();
  // iterate value tables of f^i until the first repeat: f^i for i >= pre
  // cycles with period cyc
  std::vector<std::vector<elem>> powers;
  std::map<std::vector<elem>, size_t> seen;
  std::vector<elem> id(n);
  for (int x = 0; x < n; ++x) id[x] = x;
  powers.push_back(id);
  seen[id] = 0;
  size_t pre = 0, cyc = 0;
  while (true) {
    std::vector<elem> next(n);
    for (int x = 0; x < n; ++x) next[x] = f(powers.back()[x]);
    auto it = seen.find(next);
    if (it != seen.end()) {
      pre = it->second;
      cyc = powers.size() - it->second;
      break;
    }
    seen[next] = powers.size();
    powers.push_back(std::move(next));
  }
  auto power_index = [&](size_t i) { return i < pre ? i : pre + (i - pre) % cyc; };

  const size_t p = std::max(pre, a.prefix().size());
  const size_t l = std::lcm(cyc, a.period().size());
  if (l > kOrbitPeriodCap)
    throw error("PeriodCapExceeded", "orbit period " + std::to_string(l) +
                                         " exceeds cap " + std::to_string(kOrbitPeriodCap));
  std::vector<elem> prefix(p), period(l);
  for (size_t i = 0; i < p; ++i) prefix[i] = powers[power_index(i)][a.at(i)];
  for (size_t i = 0; i < l; ++i) period[i] = powers[power_index(p + i)][a.at(p + i)];
  return lasso(a.lat(), std::move(prefix), std::move(period));
}

}  // namespace aic
