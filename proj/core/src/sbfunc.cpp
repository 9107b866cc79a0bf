#include "lfpc/sbfunc.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace lfpc {

namespace {

Coeff czero(const Field& f) { return Coeff(f.p(), f.q()); }

// Drop zero cells and merge complete sibling families that share a value,
// from the finest level up. Input cells must be pairwise disjoint.
std::vector<Cell> canonicalize(const Field& f, std::vector<Cell> cells) {
    std::erase_if(cells, [](const Cell& c) { return c.value.is_zero(); });
    if (cells.empty()) return cells;
    auto by_ball = [](const Cell& a, const Cell& b) { return a.ball < b.ball; };
    std::sort(cells.begin(), cells.end(), by_ball);
    int max_level = cells.front().ball.level();
    int cur_min = max_level;
    for (const Cell& c : cells) {
        max_level = std::max(max_level, c.ball.level());
        cur_min = std::min(cur_min, c.ball.level());
    }
    for (int lev = max_level; lev >= cur_min; --lev) {
        std::map<Ball, std::vector<std::size_t>> families;
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (cells[i].ball.level() == lev) families[cells[i].ball.parent()].push_back(i);
        std::vector<bool> dead(cells.size(), false);
        std::vector<Cell> born;
        for (const auto& [parent, members] : families) {
            if (static_cast<int>(members.size()) != f.q()) continue;
            bool uniform = true;
            for (std::size_t i : members)
                if (!(cells[i].value == cells[members.front()].value)) uniform = false;
            if (!uniform) continue;
            born.push_back(Cell{parent, cells[members.front()].value});
            for (std::size_t i : members) dead[i] = true;
            cur_min = std::min(cur_min, lev - 1);
        }
        if (born.empty()) continue;
        std::vector<Cell> kept;
        kept.reserve(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (!dead[i]) kept.push_back(std::move(cells[i]));
        kept.insert(kept.end(), born.begin(), born.end());
        cells = std::move(kept);
    }
    std::sort(cells.begin(), cells.end(), by_ball);
    return cells;
}

// Disjoint cover of supp(f) union supp(g) carrying both values.
struct RefCell {
    Ball ball;
    Coeff a;
    Coeff b;
};

std::vector<RefCell> refine_pair(const Field& f, const std::vector<Cell>& fc,
                                 const std::vector<Cell>& gc) {
    std::vector<RefCell> out;
    const Coeff nil = czero(f);
    for (const Cell& cf : fc) {
        const Cell* outer = nullptr;
        for (const Cell& cg : gc)
            if (cg.ball.contains(cf.ball)) {
                outer = &cg;
                break;
            }
        if (outer) {
            out.push_back(RefCell{cf.ball, cf.value, outer->value});
            continue;
        }
        std::vector<Ball> holes;
        for (const Cell& cg : gc)
            if (cf.ball.contains(cg.ball)) {
                out.push_back(RefCell{cg.ball, cf.value, cg.value});
                holes.push_back(cg.ball);
            }
        const ESet rest = es_subtract(ESet::from_balls(f, {cf.ball}), ESet::from_balls(f, holes));
        for (const Ball& piece : rest.balls()) out.push_back(RefCell{piece, cf.value, nil});
    }
    for (const Cell& cg : gc) {
        bool covered = false;
        std::vector<Ball> holes;
        for (const Cell& cf : fc) {
            if (cf.ball.contains(cg.ball)) {
                covered = true;
                break;
            }
            if (cg.ball.contains(cf.ball)) holes.push_back(cf.ball);
        }
        if (covered) continue;
        const ESet rest = es_subtract(ESet::from_balls(f, {cg.ball}), ESet::from_balls(f, holes));
        for (const Ball& piece : rest.balls()) out.push_back(RefCell{piece, nil, cg.value});
    }
    return out;
}

// Pointwise sum of an arbitrary overlapping multiset of cells: partition
// the union region recursively, carrying the values of enclosing cells down
// to the leaves. Work is linear in the refined cell count.
void sum_region(const Field& f, const Ball& region, std::vector<Cell> cells, Coeff carried,
                std::vector<Cell>& out) {
    std::vector<Cell> deeper;
    for (Cell& c : cells) {
        if (c.ball == region)
            carried += c.value;
        else
            deeper.push_back(std::move(c)); // strictly inside the region
    }
    if (deeper.empty()) {
        out.push_back(Cell{region, std::move(carried)});
        return;
    }
    std::vector<std::vector<Cell>> buckets(f.q());
    for (Cell& c : deeper)
        buckets[f.index(c.ball.center().digit_at(region.level()))].push_back(std::move(c));
    for (int d = 0; d < f.q(); ++d) {
        const Ball child(region.center() + LaurentNumber::term(f, f.elem(d), region.level()),
                         region.level() + 1);
        sum_region(f, child, std::move(buckets[d]), carried, out);
    }
}

std::vector<Cell> accumulate_cells(const Field& f, const std::vector<Cell>& cells) {
    if (cells.empty()) return {};
    // Bucket the cells under their ancestors at the coarsest level present;
    // uncovered gaps inside a bucket emit zero cells that canonicalization
    // drops again.
    int coarsest = cells.front().ball.level();
    for (const Cell& c : cells) coarsest = std::min(coarsest, c.ball.level());
    std::map<Ball, std::vector<Cell>> buckets;
    for (const Cell& c : cells)
        buckets[Ball(c.ball.center(), coarsest)].push_back(c);
    std::vector<Cell> out;
    for (auto& [root, mine] : buckets) sum_region(f, root, std::move(mine), czero(f), out);
    return canonicalize(f, std::move(out));
}

std::vector<Cell> add_cells(const Field& f, const std::vector<Cell>& a,
                            const std::vector<Cell>& b) {
    std::vector<Cell> all = a;
    all.insert(all.end(), b.begin(), b.end());
    return accumulate_cells(f, all);
}

std::vector<Cell> mul_cells(const Field& f, const std::vector<Cell>& a,
                            const std::vector<Cell>& b) {
    std::vector<Cell> out;
    for (const Cell& cf : a)
        for (const Cell& cg : b) {
            if (cf.ball.contains(cg.ball))
                out.push_back(Cell{cg.ball, cf.value * cg.value});
            else if (cg.ball.contains(cf.ball))
                out.push_back(Cell{cf.ball, cf.value * cg.value});
        }
    return canonicalize(f, std::move(out));
}

std::vector<Cell> restrict_cells(const Field& f, const std::vector<Cell>& a, const ESet& e) {
    std::vector<Cell> out;
    for (const Cell& c : a)
        for (const Ball& b : e.balls()) {
            if (b.contains(c.ball))
                out.push_back(c);
            else if (c.ball.contains(b))
                out.push_back(Cell{b, c.value});
        }
    return canonicalize(f, std::move(out));
}

Coeff value_at_cells(const Field& f, const std::vector<Cell>& cells, const LaurentNumber& x) {
    for (const Cell& c : cells)
        if (c.ball.contains_point(x)) return c.value;
    return czero(f);
}

Coeff value_on_cells(const Field& f, const std::vector<Cell>& cells, const Ball& b) {
    for (const Cell& c : cells) {
        if (c.ball.contains(b)) return c.value;
        if (b.contains(c.ball))
            throw DomainError("function is not constant on " + b.to_string());
    }
    return czero(f);
}

std::vector<Cell> mul_char_cells(const Field& f, const std::vector<Cell>& cells,
                                 const LaurentNumber& y, int sign) {
    if (y.is_zero()) return cells;
    const int char_lev = char_level(y);
    std::vector<Cell> out;
    for (const Cell& c : cells) {
        const int lev = std::max(c.ball.level(), char_lev);
        for (const Ball& sub : c.ball.split_to(lev)) {
            CharValue cv = chi(y * sub.center());
            if (sign < 0) cv = cv.conj();
            out.push_back(Cell{sub, c.value * cv.to_coeff(f.q())});
        }
    }
    return canonicalize(f, std::move(out));
}

ESet support_of(const Field& f, const std::vector<Cell>& cells) {
    std::vector<Ball> balls;
    balls.reserve(cells.size());
    for (const Cell& c : cells) balls.push_back(c.ball);
    return ESet::from_balls(f, std::move(balls));
}

std::string cells_to_string(const std::vector<Cell>& cells) {
    if (cells.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Cell& c : cells) {
        if (!first) os << " + ";
        first = false;
        os << '(' << c.value.to_string() << ")*ind(" << c.ball.to_string() << ')';
    }
    return os.str();
}

void require_same_field(const Field& a, const Field& b) {
    if (!(a == b)) throw FieldMismatchError("cell functions from different fields");
}

} // namespace

SBFunction SBFunction::indicator(const ESet& e) {
    std::vector<Cell> cells;
    const Coeff one = Coeff::one(e.field().p(), e.field().q());
    for (const Ball& b : e.balls()) cells.push_back(Cell{b, one});
    return from_cells(e.field(), std::move(cells));
}

SBFunction SBFunction::from_cells(const Field& f, std::vector<Cell> cells) {
    SBFunction out(f);
    out.cells_ = canonicalize(f, std::move(cells));
    return out;
}

SBFunction SBFunction::accumulate(const Field& f, const std::vector<Cell>& cells) {
    SBFunction out(f);
    out.cells_ = accumulate_cells(f, cells);
    return out;
}

ESet SBFunction::support() const { return support_of(field_, cells_); }

Coeff SBFunction::value_at(const LaurentNumber& x) const {
    return value_at_cells(field_, cells_, x);
}

Coeff SBFunction::value_on(const Ball& b) const {
    return value_on_cells(field_, cells_, b);
}

SBFunction SBFunction::operator+(const SBFunction& other) const {
    require_same_field(field_, other.field_);
    SBFunction out(field_);
    out.cells_ = add_cells(field_, cells_, other.cells_);
    return out;
}

SBFunction SBFunction::operator-(const SBFunction& other) const {
    return *this + other.scaled(-Coeff::one(field_.p(), field_.q()));
}

SBFunction SBFunction::scaled(const Coeff& c) const {
    std::vector<Cell> cells = cells_;
    for (Cell& cell : cells) cell.value = cell.value * c;
    return from_cells(field_, std::move(cells));
}

SBFunction SBFunction::conj() const {
    std::vector<Cell> cells = cells_;
    for (Cell& cell : cells) cell.value = cell.value.conj();
    return from_cells(field_, std::move(cells));
}

SBFunction SBFunction::pointwise_mul(const SBFunction& other) const {
    require_same_field(field_, other.field_);
    SBFunction out(field_);
    out.cells_ = mul_cells(field_, cells_, other.cells_);
    return out;
}

SBFunction SBFunction::restricted(const ESet& e) const {
    SBFunction out(field_);
    out.cells_ = restrict_cells(field_, cells_, e);
    return out;
}

SBFunction SBFunction::compose_dilate(int j) const {
    std::vector<Cell> cells = cells_;
    for (Cell& cell : cells) cell.ball = cell.ball.dilated(j);
    return from_cells(field_, std::move(cells));
}

SBFunction SBFunction::compose_translate(const LaurentNumber& y) const {
    std::vector<Cell> cells = cells_;
    for (Cell& cell : cells) cell.ball = cell.ball.translated(-y);
    return from_cells(field_, std::move(cells));
}

SBFunction SBFunction::mul_char(const LaurentNumber& y, int sign) const {
    SBFunction out(field_);
    out.cells_ = mul_char_cells(field_, cells_, y, sign);
    return out;
}

std::string SBFunction::to_string() const { return cells_to_string(cells_); }

Coeff sb_inner(const SBFunction& f, const SBFunction& g) {
    require_same_field(f.field(), g.field());
    Coeff acc = Coeff(f.field().p(), f.field().q());
    for (const Cell& cf : f.cells())
        for (const Cell& cg : g.cells()) {
            if (cf.ball.contains(cg.ball))
                acc += cf.value * cg.value.conj() *
                       Coeff::rational(f.field().p(), f.field().q(), cg.ball.measure());
            else if (cg.ball.contains(cf.ball))
                acc += cf.value * cg.value.conj() *
                       Coeff::rational(f.field().p(), f.field().q(), cf.ball.measure());
        }
    return acc;
}

Coeff sb_norm_sq(const SBFunction& f) {
    Coeff acc = Coeff(f.field().p(), f.field().q());
    for (const Cell& c : f.cells())
        acc += c.value.abs_sq() * Coeff::rational(f.field().p(), f.field().q(), c.ball.measure());
    return acc;
}

SBFunction sb_translate(const SBFunction& f, const TransIndex& k) {
    return f.compose_translate(-u_of_index(f.field(), k));
}

SBFunction sb_dilate(const SBFunction& f, int j) {
    return f.compose_dilate(j).scaled(Coeff::half_power(f.field().p(), f.field().q(), j));
}

namespace {

// One transformed cell: amplitude times a character factor supported on the
// ideal P^{region_level}. The running exponent tracks the character value at
// the current node center, updated in O(1) per digit during the descent.
struct FourierSource {
    int region_level;
    int char_level;
    LaurentNumber a; // modulation center; zero means a trivial factor
    Coeff amp;
};

void fourier_descend(const Field& fld, int sign, const std::vector<FourierSource>& sources,
                     const std::vector<std::uint32_t>& active, const std::vector<std::uint8_t>& exps,
                     const LaurentNumber& center, int level, std::vector<Cell>& out) {
    const bool zero_center = center.is_zero();
    bool ready = true;
    for (std::uint32_t i : active) {
        const FourierSource& s = sources[i];
        if ((zero_center && level < s.region_level) || level < s.char_level) {
            ready = false;
            break;
        }
    }
    if (ready) {
        // group the amplitudes by their character exponent before touching
        // exact arithmetic
        std::vector<std::vector<std::uint32_t>> by_exp(fld.p());
        for (std::size_t k = 0; k < active.size(); ++k) by_exp[exps[k]].push_back(active[k]);
        Coeff val(fld.p(), fld.q());
        for (int e = 0; e < fld.p(); ++e) {
            if (by_exp[e].empty()) continue;
            Coeff partial(fld.p(), fld.q());
            for (std::uint32_t i : by_exp[e]) partial += sources[i].amp;
            val += partial * Coeff::from_cyclo(fld.q(), CycloNumber::zeta_pow(fld.p(), e));
        }
        out.push_back(Cell{Ball(center, level), std::move(val)});
        return;
    }
    std::vector<std::uint32_t> next;
    std::vector<std::uint8_t> next_exps;
    for (int d = 0; d < fld.q(); ++d) {
        const GFqElem digit = fld.elem(d);
        const LaurentNumber child =
            d == 0 ? center : center + LaurentNumber::term(fld, digit, level);
        next.clear();
        next_exps.clear();
        for (std::size_t k = 0; k < active.size(); ++k) {
            const FourierSource& s = sources[active[k]];
            // a first nonzero digit above the region floor leaves the region
            if (d != 0 && zero_center && level < s.region_level) continue;
            int e = exps[k];
            if (d != 0 && !s.a.is_zero()) {
                const int tr = fld.trace(fld.mul(s.a.digit_at(-1 - level), digit));
                e = (e + (sign < 0 ? fld.p() - tr : tr)) % fld.p();
            }
            next.push_back(active[k]);
            next_exps.push_back(static_cast<std::uint8_t>(e));
        }
        if (!next.empty())
            fourier_descend(fld, sign, sources, next, next_exps, child, level + 1, out);
    }
}

SBFunction fourier_impl(const SBFunction& f, int sign) {
    const Field& fld = f.field();
    if (f.is_zero()) return SBFunction::zero(fld);
    std::vector<FourierSource> sources;
    int root_level = 0;
    for (const Cell& c : f.cells()) {
        const int k = c.ball.level();
        const LaurentNumber& a = c.ball.center();
        FourierSource s{-k, a.is_zero() ? -k : std::max(-k, char_level(a)), a,
                        c.value * Coeff::rational(fld.p(), fld.q(), q_pow(fld.q(), -k))};
        root_level = std::min(root_level, -k);
        sources.push_back(std::move(s));
    }
    std::vector<std::uint32_t> active(sources.size());
    for (std::size_t i = 0; i < sources.size(); ++i) active[i] = static_cast<std::uint32_t>(i);
    const std::vector<std::uint8_t> exps(sources.size(), 0);
    std::vector<Cell> out;
    fourier_descend(fld, sign, sources, active, exps, LaurentNumber::zero(fld), root_level, out);
    return SBFunction::from_cells(fld, std::move(out));
}

} // namespace

SBFunction sb_fourier(const SBFunction& f) { return fourier_impl(f, -1); }

SBFunction sb_inv_fourier(const SBFunction& f) { return fourier_impl(f, +1); }

SBFunction sb_affine_fourier(const SBFunction& f_hat, int j, const TransIndex& k) {
    const Field& fld = f_hat.field();
    SBFunction out = f_hat.compose_dilate(-j);
    const LaurentNumber y = u_of_index(fld, k).shifted(j);
    out = out.mul_char(y, -1);
    return out.scaled(Coeff::half_power(fld.p(), fld.q(), -j));
}

std::vector<RefinedCell> sb_refine_pair(const SBFunction& f, const SBFunction& g) {
    require_same_field(f.field(), g.field());
    std::vector<RefinedCell> out;
    for (const RefCell& rc : refine_pair(f.field(), f.cells(), g.cells()))
        out.push_back(RefinedCell{rc.ball, rc.a, rc.b});
    return out;
}

Coeff sb_integral_over(const SBFunction& f, const ESet& e) {
    require_same_field(f.field(), e.field());
    Coeff acc = Coeff(f.field().p(), f.field().q());
    for (const Cell& c : f.cells())
        for (const Ball& b : e.balls()) {
            if (b.contains(c.ball))
                acc += c.value * Coeff::rational(f.field().p(), f.field().q(), c.ball.measure());
            else if (c.ball.contains(b))
                acc += c.value * Coeff::rational(f.field().p(), f.field().q(), b.measure());
        }
    return acc;
}

StepFn StepFn::from_cells(const Field& f, std::vector<Cell> cells, bool periodic) {
    StepFn out(f, periodic);
    out.cells_ = canonicalize(f, std::move(cells));
    out.check_periodic_domain();
    return out;
}

StepFn StepFn::accumulate(const Field& f, const std::vector<Cell>& cells, bool periodic) {
    StepFn out(f, periodic);
    out.cells_ = accumulate_cells(f, cells);
    out.check_periodic_domain();
    return out;
}

StepFn StepFn::indicator(const ESet& e, bool periodic) {
    std::vector<Cell> cells;
    const Coeff one = Coeff::one(e.field().p(), e.field().q());
    for (const Ball& b : e.balls()) cells.push_back(Cell{b, one});
    return from_cells(e.field(), std::move(cells), periodic);
}

StepFn StepFn::from_sbfunction(const SBFunction& f) {
    return from_cells(f.field(), f.cells(), false);
}

void StepFn::check_periodic_domain() const {
    if (!periodic_on_O_) return;
    const Ball o = Ball::ideal(field_, 0);
    for (const Cell& c : cells_)
        if (!o.contains(c.ball))
            throw DomainError("periodic step function has a cell outside O");
}

ESet StepFn::support() const { return support_of(field_, cells_); }

Coeff StepFn::value_at(const LaurentNumber& x) const {
    if (periodic_on_O_) return value_at_cells(field_, cells_, x.integer_part());
    return value_at_cells(field_, cells_, x);
}

Coeff StepFn::value_on(const Ball& b) const {
    return value_on_cells(field_, cells_, b);
}

bool StepFn::is_real_valued() const {
    for (const Cell& c : cells_)
        if (!c.value.is_real()) return false;
    return true;
}

StepFn StepFn::operator+(const StepFn& other) const {
    require_same_field(field_, other.field_);
    if (periodic_on_O_ != other.periodic_on_O_)
        throw DomainError("adding periodic and non-periodic step functions");
    StepFn out(field_, periodic_on_O_);
    out.cells_ = add_cells(field_, cells_, other.cells_);
    return out;
}

StepFn StepFn::operator-(const StepFn& other) const {
    return *this + other.scaled(-Coeff::one(field_.p(), field_.q()));
}

StepFn StepFn::scaled(const Coeff& c) const {
    std::vector<Cell> cells = cells_;
    for (Cell& cell : cells) cell.value = cell.value * c;
    return from_cells(field_, std::move(cells), periodic_on_O_);
}

StepFn StepFn::restricted(const ESet& e) const {
    StepFn out(field_, false);
    out.cells_ = restrict_cells(field_, cells_, e);
    return out;
}

StepFn StepFn::compose_dilate(int j) const {
    std::vector<Cell> cells = cells_;
    for (Cell& cell : cells) cell.ball = cell.ball.dilated(j);
    return from_cells(field_, std::move(cells), false);
}

Coeff StepFn::integral() const {
    Coeff acc = czero(field_);
    for (const Cell& c : cells_)
        acc += c.value * Coeff::rational(field_.p(), field_.q(), c.ball.measure());
    return acc;
}

std::string StepFn::to_string() const { return cells_to_string(cells_); }

StepFn sb_modulus_sq(const SBFunction& f) {
    std::vector<Cell> cells = f.cells();
    for (Cell& c : cells) c.value = c.value.abs_sq();
    return StepFn::from_cells(f.field(), std::move(cells), false);
}

StepFn sb_periodize(const StepFn& f) {
    std::vector<Cell> folded;
    for (const Cell& c : f.cells()) {
        std::vector<Ball> pieces =
            c.ball.level() < 0 ? c.ball.split_to(0) : std::vector<Ball>{c.ball};
        for (const Ball& piece : pieces)
            folded.push_back(Cell{Ball(piece.center().integer_part(), piece.level()), c.value});
    }
    return StepFn::accumulate(f.field(), folded, true);
}

bool sb_is_integral_periodic(const StepFn& f) {
    // A compactly supported step function equals all of its lattice
    // translates only when it vanishes; genuine periodic extensions carry
    // the flag.
    return f.periodic_on_O() || f.is_zero();
}

} // namespace lfpc
