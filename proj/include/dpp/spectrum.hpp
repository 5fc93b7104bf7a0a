#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dpp {

using UnitIndex = int;

// Closed interval of frequency-slot units [lo, hi], at least one unit wide.
struct ContiguousUnits {
  UnitIndex lo{0};
  UnitIndex hi{0};

  constexpr int size() const { return hi - lo + 1; }
  constexpr bool includes(const ContiguousUnits& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  friend constexpr bool operator==(const ContiguousUnits&, const ContiguousUnits&) = default;
};

inline ContiguousUnits make_cu(UnitIndex lo, UnitIndex hi) {
  if (lo < 0 || hi < lo) throw std::invalid_argument("bad contiguous-unit bounds");
  return ContiguousUnits{lo, hi};
}

inline bool cu_includes(const ContiguousUnits& outer, const ContiguousUnits& inner) {
  return outer.includes(inner);
}

// A set of units kept as an ordered list of maximal runs: consecutive runs
// are separated by at least one missing unit, so the run list is canonical.
class SpectrumSet {
 public:
  SpectrumSet() = default;
  explicit SpectrumSet(ContiguousUnits cu) : runs_{cu} {}

  static SpectrumSet whole(int omega) {
    if (omega <= 0) throw std::invalid_argument("omega must be positive");
    return SpectrumSet(ContiguousUnits{0, omega - 1});
  }

  static SpectrumSet from_units(std::vector<UnitIndex> units) {
    std::sort(units.begin(), units.end());
    units.erase(std::unique(units.begin(), units.end()), units.end());
    SpectrumSet s;
    for (UnitIndex u : units) {
      if (!s.runs_.empty() && s.runs_.back().hi + 1 == u)
        s.runs_.back().hi = u;
      else
        s.runs_.push_back({u, u});
    }
    return s;
  }

  static SpectrumSet from_runs(std::vector<ContiguousUnits> runs) {
    std::sort(runs.begin(), runs.end(),
              [](const ContiguousUnits& a, const ContiguousUnits& b) { return a.lo < b.lo; });
    SpectrumSet s;
    for (const ContiguousUnits& r : runs) {
      if (r.lo < 0 || r.hi < r.lo) throw std::invalid_argument("bad run");
      if (!s.runs_.empty() && r.lo <= s.runs_.back().hi + 1)
        s.runs_.back().hi = std::max(s.runs_.back().hi, r.hi);
      else
        s.runs_.push_back(r);
    }
    return s;
  }

  const std::vector<ContiguousUnits>& runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }

  int unit_count() const {
    int n = 0;
    for (const auto& r : runs_) n += r.size();
    return n;
  }

  bool contains(ContiguousUnits cu) const {
    for (const auto& r : runs_)
      if (r.includes(cu)) return true;
    return false;
  }

  bool contains_unit(UnitIndex u) const { return contains({u, u}); }

  // Lowest-start block of k units wholly inside one run, if any.
  std::optional<ContiguousUnits> first_fit(int k) const {
    if (k < 1) throw std::invalid_argument("first_fit needs k >= 1");
    for (const auto& r : runs_)
      if (r.size() >= k) return ContiguousUnits{r.lo, r.lo + k - 1};
    return std::nullopt;
  }

  friend SpectrumSet intersect(const SpectrumSet& a, const SpectrumSet& b) {
    SpectrumSet out;
    std::size_t i = 0, j = 0;
    while (i < a.runs_.size() && j < b.runs_.size()) {
      const auto& ra = a.runs_[i];
      const auto& rb = b.runs_[j];
      UnitIndex lo = std::max(ra.lo, rb.lo);
      UnitIndex hi = std::min(ra.hi, rb.hi);
      if (lo <= hi) out.runs_.push_back({lo, hi});
      if (ra.hi < rb.hi)
        ++i;
      else
        ++j;
    }
    return out;
  }

  friend bool operator==(const SpectrumSet&, const SpectrumSet&) = default;

  std::string to_string() const {
    std::string out;
    for (const auto& r : runs_) {
      if (!out.empty()) out += ',';
      out += std::to_string(r.lo);
      out += '-';
      out += std::to_string(r.hi);
    }
    return out;
  }

  // The JSON shape: an array of [lo, hi] pairs.
  std::vector<std::array<UnitIndex, 2>> runs_as_pairs() const {
    std::vector<std::array<UnitIndex, 2>> pairs;
    pairs.reserve(runs_.size());
    for (const auto& r : runs_) pairs.push_back({r.lo, r.hi});
    return pairs;
  }

  static SpectrumSet from_pairs(const std::vector<std::array<UnitIndex, 2>>& pairs) {
    std::vector<ContiguousUnits> runs;
    runs.reserve(pairs.size());
    for (const auto& p : pairs) runs.push_back(make_cu(p[0], p[1]));
    return from_runs(std::move(runs));
  }

  // Accepts "0-1,3-5"; a bare index stands for a one-unit run.
  static SpectrumSet parse(std::string_view text) {
    std::vector<ContiguousUnits> runs;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t end = text.find(',', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view tok = text.substr(pos, end - pos);
      if (!tok.empty()) {
        std::size_t dash = tok.find('-');
        UnitIndex lo = 0, hi = 0;
        auto num = [&](std::string_view s) {
          int v = 0;
          auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
          if (ec != std::errc() || p != s.data() + s.size())
            throw std::invalid_argument("bad spectrum literal: " + std::string(text));
          return v;
        };
        if (dash == std::string_view::npos) {
          lo = hi = num(tok);
        } else {
          lo = num(tok.substr(0, dash));
          hi = num(tok.substr(dash + 1));
        }
        if (lo < 0 || hi < lo) throw std::invalid_argument("bad spectrum run: " + std::string(tok));
        runs.push_back({lo, hi});
      }
      pos = end + 1;
    }
    return from_runs(std::move(runs));
  }

 private:
  std::vector<ContiguousUnits> runs_;
};

inline std::vector<ContiguousUnits> maximal_runs(const SpectrumSet& s) { return s.runs(); }

inline SpectrumSet intersect(const ContiguousUnits& cu, const SpectrumSet& s) {
  return intersect(SpectrumSet(cu), s);
}

// Ledger mutations: both enforce their preconditions, since a violation means
// the allocation bookkeeping of the owner is already corrupt.
inline SpectrumSet subtract(const SpectrumSet& s, ContiguousUnits cu) {
  if (!s.contains(cu)) throw std::logic_error("subtract: units not present: " + s.to_string());
  std::vector<ContiguousUnits> runs;
  runs.reserve(s.runs().size() + 1);
  for (const auto& r : s.runs()) {
    if (r.hi < cu.lo || cu.hi < r.lo) {
      runs.push_back(r);
      continue;
    }
    if (r.lo < cu.lo) runs.push_back({r.lo, cu.lo - 1});
    if (cu.hi < r.hi) runs.push_back({cu.hi + 1, r.hi});
  }
  return SpectrumSet::from_runs(std::move(runs));
}

inline SpectrumSet add(const SpectrumSet& s, ContiguousUnits cu) {
  for (const auto& r : s.runs())
    if (!(r.hi < cu.lo || cu.hi < r.lo))
      throw std::logic_error("add: units already present: " + s.to_string());
  std::vector<ContiguousUnits> runs = s.runs();
  runs.push_back(cu);
  return SpectrumSet::from_runs(std::move(runs));
}

}  // namespace dpp
