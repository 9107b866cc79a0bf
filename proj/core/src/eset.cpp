#include "lfpc/eset.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace lfpc {

Rational q_pow(int q, int e) {
    Rational out = 1;
    for (int i = 0; i < std::abs(e); ++i) out *= q;
    if (e < 0) out = 1 / out;
    return out;
}

namespace {

// center agreement below the given level, without building reduced copies
bool agrees_below(const LaurentNumber& reduced_center, const LaurentNumber& x, int level) {
    auto mine = reduced_center.terms().begin();
    const auto mend = reduced_center.terms().end();
    for (const auto& [exp, digit] : x.terms()) {
        if (exp >= level) break; // maps are exponent sorted
        if (mine == mend || mine->first != exp || !(mine->second == digit)) return false;
        ++mine;
    }
    return mine == mend;
}

} // namespace

bool Ball::contains(const Ball& other) const {
    if (level_ > other.level_) return false;
    return agrees_below(center_, other.center_, level_);
}

bool Ball::contains_point(const LaurentNumber& x) const {
    return agrees_below(center_, x, level_);
}

bool Ball::intersects(const Ball& other) const {
    return contains(other) || other.contains(*this);
}

std::vector<Ball> Ball::split_to(int k) const {
    if (k < level_) throw DomainError("cannot split a ball to a coarser level");
    std::vector<Ball> out{*this};
    const Field& f = field();
    for (int lev = level_; lev < k; ++lev) {
        std::vector<Ball> next;
        next.reserve(out.size() * f.q());
        for (const Ball& b : out)
            for (int d = 0; d < f.q(); ++d)
                next.push_back(Ball(b.center() + LaurentNumber::term(f, f.elem(d), lev), lev + 1));
        out = std::move(next);
    }
    return out;
}

std::string Ball::to_string() const {
    std::ostringstream os;
    os << "ball(" << center_.to_string() << "; " << level_ << ')';
    return os.str();
}

namespace {

// Shared canonicalization: deduplicate/absorb nested balls, then merge
// complete sibling families bottom-up.
std::vector<Ball> normalize_balls(const Field& f, std::vector<Ball> balls) {
    std::sort(balls.begin(), balls.end());
    std::vector<Ball> kept;
    for (const Ball& b : balls) {
        bool absorbed = false;
        for (const Ball& k : kept)
            if (k.contains(b)) {
                absorbed = true;
                break;
            }
        if (!absorbed) kept.push_back(b);
    }
    if (kept.empty()) return kept;
    int max_level = kept.front().level();
    int cur_min = kept.front().level();
    for (const Ball& b : kept) {
        max_level = std::max(max_level, b.level());
        cur_min = std::min(cur_min, b.level());
    }
    for (int lev = max_level; lev >= cur_min; --lev) {
        std::map<Ball, int> families;
        for (const Ball& b : kept)
            if (b.level() == lev) families[b.parent()] += 1;
        for (const auto& [parent, count] : families) {
            if (count != f.q()) continue;
            std::erase_if(kept, [&](const Ball& b) {
                return b.level() == lev && parent.contains(b);
            });
            kept.push_back(parent);
            cur_min = std::min(cur_min, lev - 1);
        }
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

// Refine a multiset of balls within O (or any region) to a disjoint list of
// cells with per-point multiplicities, then merge sibling families that
// share a count.
std::vector<FoldCell> count_multiset(const Field& f, const std::vector<Ball>& balls) {
    if (balls.empty()) return {};
    int max_level = balls.front().level();
    for (const Ball& b : balls) max_level = std::max(max_level, b.level());
    std::map<Ball, int> counts;
    for (const Ball& b : balls)
        for (const Ball& cell : b.split_to(max_level)) counts[cell] += 1;
    // Merge complete same-count sibling families from the finest level up.
    for (int lev = max_level; ; --lev) {
        std::map<Ball, std::vector<std::map<Ball, int>::iterator>> families;
        bool any_at_level = false;
        for (auto it = counts.begin(); it != counts.end(); ++it)
            if (it->first.level() == lev) {
                families[it->first.parent()].push_back(it);
                any_at_level = true;
            }
        if (!any_at_level) break;
        bool merged = false;
        for (auto& [parent, members] : families) {
            if (static_cast<int>(members.size()) != f.q()) continue;
            const int value = members.front()->second;
            bool uniform = true;
            for (const auto& it : members)
                if (it->second != value) uniform = false;
            if (!uniform) continue;
            for (const auto& it : members) counts.erase(it);
            counts[parent] = value;
            merged = true;
        }
        if (!merged) break;
    }
    std::vector<FoldCell> out;
    out.reserve(counts.size());
    for (const auto& [cell, mult] : counts) out.push_back(FoldCell{cell, mult});
    return out;
}

} // namespace

ESet ESet::from_balls(const Field& f, std::vector<Ball> balls) {
    for (const Ball& b : balls)
        if (!(b.field() == f)) throw FieldMismatchError("ball from a different field");
    ESet out(f);
    out.balls_ = normalize_balls(f, std::move(balls));
    return out;
}

ESet ESet::ideal(const Field& f, int k) {
    return from_balls(f, {Ball::ideal(f, k)});
}

ESet ESet::annulus(const Field& f, int k) {
    return es_subtract(ideal(f, k), ideal(f, k + 1));
}

Rational ESet::measure() const {
    Rational out = 0;
    for (const Ball& b : balls_) out += b.measure();
    return out;
}

bool ESet::contains_point(const LaurentNumber& x) const {
    for (const Ball& b : balls_)
        if (b.contains_point(x)) return true;
    return false;
}

ESet ESet::translated(const LaurentNumber& x) const {
    std::vector<Ball> moved;
    moved.reserve(balls_.size());
    for (const Ball& b : balls_) moved.push_back(b.translated(x));
    return from_balls(field_, std::move(moved));
}

ESet ESet::dilated(int j) const {
    std::vector<Ball> moved;
    moved.reserve(balls_.size());
    for (const Ball& b : balls_) moved.push_back(b.dilated(j));
    return from_balls(field_, std::move(moved));
}

std::vector<Ball> ESet::split_to_level(int k) const {
    std::vector<Ball> out;
    for (const Ball& b : balls_) {
        if (b.level() > k) throw DomainError("refinement level coarser than a ball of the set");
        for (Ball& cell : b.split_to(k)) out.push_back(std::move(cell));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string ESet::to_string() const {
    if (balls_.empty()) return "{}";
    std::ostringstream os;
    bool first = true;
    for (const Ball& b : balls_) {
        if (!first) os << " | ";
        first = false;
        os << b.to_string();
    }
    return os.str();
}

ESet es_union(const ESet& a, const ESet& b) {
    if (!(a.field() == b.field())) throw FieldMismatchError("sets from different fields");
    std::vector<Ball> all = a.balls();
    all.insert(all.end(), b.balls().begin(), b.balls().end());
    return ESet::from_balls(a.field(), std::move(all));
}

ESet es_intersect(const ESet& a, const ESet& b) {
    if (!(a.field() == b.field())) throw FieldMismatchError("sets from different fields");
    std::vector<Ball> pieces;
    for (const Ball& x : a.balls())
        for (const Ball& y : b.balls()) {
            if (x.contains(y))
                pieces.push_back(y);
            else if (y.contains(x))
                pieces.push_back(x);
        }
    return ESet::from_balls(a.field(), std::move(pieces));
}

namespace {

void subtract_ball(const Ball& a, std::vector<Ball> holes, std::vector<Ball>& out) {
    // Pre: every hole is strictly inside a.
    if (holes.empty()) {
        out.push_back(a);
        return;
    }
    const Field& f = a.field();
    for (int d = 0; d < f.q(); ++d) {
        const Ball child(a.center() + LaurentNumber::term(f, f.elem(d), a.level()), a.level() + 1);
        std::vector<Ball> inner;
        bool removed = false;
        for (const Ball& h : holes) {
            if (h == child || h.contains(child)) {
                removed = true;
                break;
            }
            if (child.contains(h)) inner.push_back(h);
        }
        if (!removed) subtract_ball(child, std::move(inner), out);
    }
}

} // namespace

ESet es_subtract(const ESet& a, const ESet& b) {
    if (!(a.field() == b.field())) throw FieldMismatchError("sets from different fields");
    std::vector<Ball> pieces;
    for (const Ball& x : a.balls()) {
        bool covered = false;
        std::vector<Ball> holes;
        for (const Ball& y : b.balls()) {
            if (y.contains(x)) {
                covered = true;
                break;
            }
            if (x.contains(y)) holes.push_back(y);
        }
        if (covered) continue;
        subtract_ball(x, std::move(holes), pieces);
    }
    return ESet::from_balls(a.field(), std::move(pieces));
}

bool es_subset(const ESet& a, const ESet& b) {
    return es_subtract(a, b).is_empty();
}

std::vector<FoldCell> es_fold(const ESet& a) {
    const Field& f = a.field();
    std::vector<Ball> folded;
    for (const Ball& b : a.balls()) {
        std::vector<Ball> cells = b.level() < 0 ? b.split_to(0) : std::vector<Ball>{b};
        for (const Ball& cell : cells)
            folded.push_back(Ball(cell.center().integer_part(), cell.level()));
    }
    return count_multiset(f, folded);
}

TilingVerdict es_is_translation_partition(const ESet& a, PartitionMode mode) {
    const Field& f = a.field();
    const auto folded = es_fold(a);
    for (const FoldCell& fc : folded)
        if (fc.multiplicity >= 2)
            return TilingVerdict{false, "translates_overlap", fc.cell, fc.multiplicity};
    if (mode == PartitionMode::AllOfK) {
        std::vector<Ball> cover;
        cover.reserve(folded.size());
        for (const FoldCell& fc : folded) cover.push_back(fc.cell);
        const ESet covered = ESet::from_balls(f, std::move(cover));
        const ESet gap = es_subtract(ESet::ideal(f, 0), covered);
        if (!gap.is_empty())
            return TilingVerdict{false, "translates_do_not_cover", gap.balls().front(), 0};
    }
    return TilingVerdict{true, "translation_partition", std::nullopt, 1};
}

TilingVerdict es_is_dilation_partition(const ESet& w) {
    const Field& f = w.field();
    if (w.is_empty())
        return TilingVerdict{false, "dilates_do_not_cover", Ball::ideal(f, 1), 0};
    std::vector<Ball> normalized;
    for (const Ball& b : w.balls()) {
        if (b.is_zero_centered())
            return TilingVerdict{false, "contains_zero_ball", b, 0};
        // Every point of the ball shares the center's valuation, so the
        // ball sits inside one annulus; scale it into the unit annulus.
        const int v = *b.center().valuation();
        normalized.push_back(b.dilated(-v));
    }
    const auto counted = count_multiset(f, normalized);
    for (const FoldCell& fc : counted)
        if (fc.multiplicity >= 2)
            return TilingVerdict{false, "dilates_overlap", fc.cell, fc.multiplicity};
    std::vector<Ball> cover;
    cover.reserve(counted.size());
    for (const FoldCell& fc : counted) cover.push_back(fc.cell);
    const ESet covered = ESet::from_balls(f, std::move(cover));
    const ESet gap = es_subtract(ESet::annulus(f, 0), covered);
    if (!gap.is_empty())
        return TilingVerdict{false, "dilates_do_not_cover", gap.balls().front(), 0};
    return TilingVerdict{true, "dilation_partition", std::nullopt, 1};
}

} // namespace lfpc
