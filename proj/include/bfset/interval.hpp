#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bfset/errors.hpp"

namespace bfset {

// 1-D parameter space Theta. Bounds are finite; open_* marks half-open spaces.
struct ParameterSpace {
    double lower = 0.0;
    double upper = 1.0;
    bool open_lower = false;
    bool open_upper = false;

    ParameterSpace() = default;
    ParameterSpace(double lo, double hi, bool open_lo = false, bool open_hi = false)
        : lower(lo), upper(hi), open_lower(open_lo), open_upper(open_hi) {
        if (!(lower < upper))
            throw IntervalOutOfSpace("ParameterSpace requires lower < upper");
    }

    bool contains(double theta) const {
        if (theta < lower || theta > upper) return false;
        if (theta == lower && open_lower) return false;
        if (theta == upper && open_upper) return false;
        return true;
    }

    static ParameterSpace unit() { return ParameterSpace(0.0, 1.0); }
};

// Closed/open interval [lo,hi], (lo,hi], etc. Point intervals are closed on
// both sides.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = true;

    Interval() = default;
    Interval(double l, double h, bool lc = true, bool hc = true)
        : lo(l), hi(h), lo_closed(lc), hi_closed(hc) {
        if (!(lo <= hi)) throw IntervalOutOfSpace("Interval requires lo <= hi");
        if (lo == hi && !(lo_closed && hi_closed))
            throw IntervalOutOfSpace("point interval must be closed on both ends");
    }

    bool is_point() const { return lo == hi; }
    double length() const { return hi - lo; }

    bool contains(double t) const {
        if (t < lo || t > hi) return false;
        if (t == lo && !lo_closed) return false;
        if (t == hi && !hi_closed) return false;
        return true;
    }

    bool operator==(const Interval& o) const {
        return lo == o.lo && hi == o.hi && lo_closed == o.lo_closed && hi_closed == o.hi_closed;
    }
};

// Finite union of disjoint, sorted intervals. Ops may yield the empty set;
// stored hypotheses must be nonempty (checked where states are built).
class HypothesisSet {
  public:
    HypothesisSet() = default;
    explicit HypothesisSet(std::vector<Interval> ivs, std::string label = "")
        : intervals_(std::move(ivs)), label_(std::move(label)) {}

    const std::vector<Interval>& intervals() const { return intervals_; }
    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }

    bool empty() const { return intervals_.empty(); }
    bool is_point() const { return intervals_.size() == 1 && intervals_[0].is_point(); }

    double measure() const {
        double m = 0.0;
        for (const auto& iv : intervals_) m += iv.length();
        return m;
    }

    bool contains(double t) const {
        for (const auto& iv : intervals_)
            if (iv.contains(t)) return true;
        return false;
    }

    bool on_boundary(double t) const {
        for (const auto& iv : intervals_)
            if (t == iv.lo || t == iv.hi) return true;
        return false;
    }

    // Exact equality: same intervals, same endpoint topology.
    bool operator==(const HypothesisSet& o) const { return intervals_ == o.intervals_; }
    bool operator!=(const HypothesisSet& o) const { return !(*this == o); }

  private:
    std::vector<Interval> intervals_;
    std::string label_;
};

enum class RegimeLabel { NullOnly, AltOnly, Overlap, Boundary };

inline const char* to_string(RegimeLabel r) {
    switch (r) {
        case RegimeLabel::NullOnly: return "NullOnly";
        case RegimeLabel::AltOnly: return "AltOnly";
        case RegimeLabel::Overlap: return "Overlap";
        case RegimeLabel::Boundary: return "Boundary";
    }
    return "?";
}

namespace detail {

// Endpoint ordering helpers for the sweep in normalize/intersect.
inline bool lo_before(const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
}

// True when a and b overlap or touch in a way whose union is one interval.
inline bool mergeable(const Interval& a, const Interval& b) {
    // precondition: !lo_before(b, a)
    if (b.lo < a.hi) return true;
    if (b.lo == a.hi) return a.hi_closed || b.lo_closed;
    return false;
}

} // namespace detail

// Canonical form: sorted, pairwise disjoint, touching pieces merged.
inline HypothesisSet normalize(std::vector<Interval> ivs, const ParameterSpace& space,
                               std::string label = "") {
    for (const auto& iv : ivs) {
        if (iv.lo < space.lower || iv.hi > space.upper)
            throw IntervalOutOfSpace("interval [" + std::to_string(iv.lo) + "," +
                                     std::to_string(iv.hi) + "] exceeds parameter space");
    }
    std::sort(ivs.begin(), ivs.end(), detail::lo_before);
    std::vector<Interval> out;
    for (const auto& iv : ivs) {
        if (!out.empty() && detail::mergeable(out.back(), iv)) {
            Interval& last = out.back();
            if (iv.hi > last.hi) {
                last.hi = iv.hi;
                last.hi_closed = iv.hi_closed;
            } else if (iv.hi == last.hi) {
                last.hi_closed = last.hi_closed || iv.hi_closed;
            }
        } else {
            out.push_back(iv);
        }
    }
    return HypothesisSet(std::move(out), std::move(label));
}

inline HypothesisSet set_intersection(const HypothesisSet& a, const HypothesisSet& b) {
    std::vector<Interval> out;
    for (const auto& x : a.intervals()) {
        for (const auto& y : b.intervals()) {
            double lo, hi;
            bool lc, hc;
            if (x.lo > y.lo) { lo = x.lo; lc = x.lo_closed; }
            else if (x.lo < y.lo) { lo = y.lo; lc = y.lo_closed; }
            else { lo = x.lo; lc = x.lo_closed && y.lo_closed; }
            if (x.hi < y.hi) { hi = x.hi; hc = x.hi_closed; }
            else if (x.hi > y.hi) { hi = y.hi; hc = y.hi_closed; }
            else { hi = x.hi; hc = x.hi_closed && y.hi_closed; }
            if (lo < hi || (lo == hi && lc && hc)) out.emplace_back(lo, hi, lc, hc);
        }
    }
    // pieces are already disjoint and sorted by construction
    return HypothesisSet(std::move(out));
}

inline HypothesisSet set_difference(const HypothesisSet& a, const HypothesisSet& b) {
    std::vector<Interval> current(a.intervals());
    for (const auto& y : b.intervals()) {
        std::vector<Interval> next;
        for (const auto& x : current) {
            // part of x left of y
            if (x.lo < y.lo || (x.lo == y.lo && x.lo_closed && !y.lo_closed)) {
                double hi = std::min(x.hi, y.lo);
                bool hc;
                if (y.lo < x.hi) { hi = y.lo; hc = !y.lo_closed; }
                else { hi = x.hi; hc = x.hi_closed && !(x.hi == y.lo && y.lo_closed); }
                if (x.lo < hi || (x.lo == hi && x.lo_closed && hc))
                    next.emplace_back(x.lo, hi, x.lo_closed, hc);
            }
            // part of x right of y
            if (x.hi > y.hi || (x.hi == y.hi && x.hi_closed && !y.hi_closed)) {
                double lo;
                bool lc;
                if (y.hi > x.lo) { lo = y.hi; lc = !y.hi_closed; }
                else { lo = x.lo; lc = x.lo_closed && !(x.lo == y.hi && y.hi_closed); }
                if (lo < x.hi || (lo == x.hi && lc && x.hi_closed))
                    next.emplace_back(lo, x.hi, lc, x.hi_closed);
            }
        }
        current = std::move(next);
    }
    return HypothesisSet(std::move(current));
}

inline HypothesisSet set_union(const HypothesisSet& a, const HypothesisSet& b,
                               const ParameterSpace& space) {
    std::vector<Interval> ivs(a.intervals());
    ivs.insert(ivs.end(), b.intervals().begin(), b.intervals().end());
    return normalize(std::move(ivs), space);
}

// Classification of a true parameter value against a hypothesis pair.
// Values sitting on any interval endpoint, or outside both sets, are
// Boundary: the asymptotic claims exclude them.
inline RegimeLabel classify_regime(double theta_star, const HypothesisSet& h0,
                                   const HypothesisSet& h1, const ParameterSpace& space) {
    if (!space.contains(theta_star))
        throw OutOfSpace("theta_star outside parameter space");
    if (h0.on_boundary(theta_star) || h1.on_boundary(theta_star))
        return RegimeLabel::Boundary;
    const bool in0 = h0.contains(theta_star);
    const bool in1 = h1.contains(theta_star);
    if (in0 && in1) return RegimeLabel::Overlap;
    if (in0) return RegimeLabel::NullOnly;
    if (in1) return RegimeLabel::AltOnly;
    return RegimeLabel::Boundary;
}

// The parameter region whose truth drives the evidence decisively against
// `of`. Depends only on the supports, never on density shapes.
inline HypothesisSet falsifier_class(const HypothesisSet& of, const HypothesisSet& against) {
    return set_difference(against, of);
}

} // namespace bfset
