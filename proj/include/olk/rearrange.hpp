#pragma once

#include <cstddef>
#include <vector>

#include "olk/core.hpp"
#include "olk/orlicz.hpp"

namespace olk {

/// Bijection of {0, ..., n-1}.
class Permutation {
public:
    explicit Permutation(std::vector<std::size_t> images);
    static Permutation identity(std::size_t n);

    std::size_t size() const { return images_.size(); }
    std::size_t operator()(std::size_t i) const { return images_[i]; }
    const std::vector<std::size_t>& images() const { return images_; }
    /// y(i) = x(sigma(i)).
    Seq apply(const Seq& x) const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::size_t> images_;
};

/// |{t : f(t) > s}|.
ExtReal dist(const StepFn& f, double s);

/// Nonincreasing rearrangement on the same interval, adjacent equal cells merged.
StepFn decreasing_rearrangement(const StepFn& f);
/// |x| sorted in descending order.
Seq decreasing_rearrangement(const Seq& x);

/// f(t/2), clipped to the original interval.
StepFn dilate2(const StepFn& f);
/// Each entry repeated twice.
Seq dilate2_seq(const Seq& x);

/// int_0^t f* evaluated exactly.
ExtReal cumulative_rearranged(const StepFn& f, double t);

/// g is submajorized by f: int_0^t g* <= int_0^t f* for all t.
bool submajorizes(const StepFn& g, const StepFn& f);
bool submajorizes(const Seq& g, const Seq& f);

struct PairingSides {
    ExtReal lhs;
    ExtReal rhs;
};

/// lhs = int |f g|, rhs = int f* g*.
PairingSides hardy_littlewood_check(const StepFn& f, const StepFn& g);

struct ExchangeSides {
    double sorted_side = 0.0;
    double swapped_side = 0.0;
};

/// Two-cell exchange: phi(s1/t1) t1 + phi(s2/t2) t2 versus the swapped pairing.
/// Requires s1 >= s2 > 0 and t1 >= t2 > 0.
ExchangeSides exchange_inequality(double s1, double s2, double t1, double t2, const OrliczFn& phi);

}  // namespace olk
