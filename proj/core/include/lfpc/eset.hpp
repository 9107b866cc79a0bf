#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "lfpc/cyclotomic.hpp"
#include "lfpc/laurent.hpp"

namespace lfpc {

/// q^e as an exact rational, e any integer.
Rational q_pow(int q, int e);

/// Ultrametric ball center + P^level. The center is stored reduced mod the
/// level (no digit at exponent >= level), so equal balls have equal
/// representations. Two balls are always nested or disjoint.
class Ball {
public:
    Ball(const LaurentNumber& center, int level)
        : center_(center.reduced_mod_level(level)), level_(level) {}

    static Ball ideal(const Field& f, int level) {
        return Ball(LaurentNumber::zero(f), level);
    }

    const LaurentNumber& center() const { return center_; }
    int level() const { return level_; }
    const Field& field() const { return center_.field(); }
    bool is_zero_centered() const { return center_.is_zero(); }

    Rational measure() const { return q_pow(field().q(), -level_); }

    bool contains(const Ball& other) const;
    bool contains_point(const LaurentNumber& x) const;
    bool intersects(const Ball& other) const;

    Ball translated(const LaurentNumber& x) const { return Ball(center_ + x, level_); }
    /// p^j * ball: scales the measure by q^{-j}.
    Ball dilated(int j) const { return Ball(center_.shifted(j), level_ + j); }
    Ball parent() const { return Ball(center_, level_ - 1); }
    /// Partition into q^{k - level} sub-balls at level exactly k (k >= level).
    std::vector<Ball> split_to(int k) const;

    bool operator==(const Ball& other) const {
        return level_ == other.level_ && center_ == other.center_;
    }
    std::strong_ordering operator<=>(const Ball& other) const {
        if (level_ != other.level_) return level_ <=> other.level_;
        return center_ <=> other.center_;
    }

    std::string to_string() const;

private:
    LaurentNumber center_;
    int level_;
};

/// Canonical elementary set: a finite union of pairwise disjoint balls,
/// maximally merged (no complete family of q siblings is kept in place of
/// its parent). Equal sets have identical representations.
class ESet {
public:
    explicit ESet(const Field& f) : field_(f) {}

    static ESet empty(const Field& f) { return ESet(f); }
    /// Normalizes arbitrary input: overlaps are absorbed, complete sibling
    /// families merged bottom-up. Idempotent and measure-preserving for the
    /// union.
    static ESet from_balls(const Field& f, std::vector<Ball> balls);
    /// P^k.
    static ESet ideal(const Field& f, int k);
    /// P^k \ P^{k+1}.
    static ESet annulus(const Field& f, int k);

    const Field& field() const { return field_; }
    const std::vector<Ball>& balls() const { return balls_; }
    bool is_empty() const { return balls_.empty(); }
    Rational measure() const;
    bool contains_point(const LaurentNumber& x) const;

    ESet translated(const LaurentNumber& x) const;
    ESet dilated(int j) const;
    /// Partition into balls at level exactly k; every ball must have
    /// level <= k.
    std::vector<Ball> split_to_level(int k) const;

    bool operator==(const ESet& other) const {
        return field_ == other.field_ && balls_ == other.balls_;
    }

    std::string to_string() const;

private:
    Field field_;
    std::vector<Ball> balls_;
};

ESet es_union(const ESet& a, const ESet& b);
ESet es_intersect(const ESet& a, const ESet& b);
ESet es_subtract(const ESet& a, const ESet& b);
bool es_subset(const ESet& a, const ESet& b);

/// One cell of a folded multiset: a ball within O and how many source
/// pieces landed on it.
struct FoldCell {
    Ball cell;
    int multiplicity;
    bool operator==(const FoldCell&) const = default;
};

/// Translates every piece of A into O by dropping the fractional digits of
/// its center (balls of level < 0 are split to level 0 first). The output
/// cells are pairwise disjoint, canonical, and carry exact multiplicities;
/// sum of multiplicity * measure equals measure(A).
std::vector<FoldCell> es_fold(const ESet& a);

enum class PartitionMode { Subset, AllOfK };

/// Outcome of a tiling decision; on failure the witness cell reproduces the
/// defect (multiplicity >= 2 for overlaps, 0 for coverage gaps).
struct TilingVerdict {
    bool ok = false;
    std::string condition;
    std::optional<Ball> witness;
    int multiplicity = 0;
};

/// Are the translates {A + u(k)} pairwise disjoint (Subset mode), and do
/// they additionally tile all of K (AllOfK mode)?
TilingVerdict es_is_translation_partition(const ESet& a, PartitionMode mode);

/// Is {p^j W : j in Z} a measurable partition of K? Decided exactly by
/// valuation-normalizing every ball into the unit annulus O \ P and testing
/// that the normalized multiset partitions the annulus: a point xi != 0
/// lies in p^j W for exactly one j iff its unit part is covered exactly
/// once. Any zero-centered ball fails immediately (its dilates overlap).
TilingVerdict es_is_dilation_partition(const ESet& w);

} // namespace lfpc
