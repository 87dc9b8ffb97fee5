#include "fhd/particle_field.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <utility>

#include "fhd/errors.hpp"

namespace fhd {

namespace {

PrimitiveState state_at(const ParticleField& f, std::size_t i) {
    return PrimitiveState{f.rho[i], f.u[i], f.T[i]};
}

PrimitiveState mean_state(const PrimitiveState& a, const PrimitiveState& b) {
    return PrimitiveState{0.5 * (a.rho + b.rho), 0.5 * (a.u + b.u), 0.5 * (a.T + b.T)};
}

void insert_at(ParticleField& f, std::size_t idx, double pos, const PrimitiveState& s) {
    f.x.insert(f.x.begin() + static_cast<std::ptrdiff_t>(idx), pos);
    f.rho.insert(f.rho.begin() + static_cast<std::ptrdiff_t>(idx), s.rho);
    f.u.insert(f.u.begin() + static_cast<std::ptrdiff_t>(idx), s.u);
    f.T.insert(f.T.begin() + static_cast<std::ptrdiff_t>(idx), s.T);
}

void erase_at(ParticleField& f, std::size_t idx) {
    f.x.erase(f.x.begin() + static_cast<std::ptrdiff_t>(idx));
    f.rho.erase(f.rho.begin() + static_cast<std::ptrdiff_t>(idx));
    f.u.erase(f.u.begin() + static_cast<std::ptrdiff_t>(idx));
    f.T.erase(f.T.begin() + static_cast<std::ptrdiff_t>(idx));
}

std::size_t sorted_pos(const ParticleField& f, double pos) {
    return static_cast<std::size_t>(
        std::lower_bound(f.x.begin(), f.x.end(), pos) - f.x.begin());
}

void sort_by_position(ParticleField& f) {
    if (std::is_sorted(f.x.begin(), f.x.end())) return;
    std::vector<std::size_t> idx(f.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(),
              [&f](std::size_t a, std::size_t b) { return f.x[a] < f.x[b]; });
    const auto permute = [&idx](std::vector<double>& v) {
        std::vector<double> tmp(v.size());
        for (std::size_t i = 0; i < idx.size(); ++i) tmp[i] = v[idx[i]];
        v = std::move(tmp);
    };
    permute(f.x);
    permute(f.rho);
    permute(f.u);
    permute(f.T);
}

}  // namespace

ParticleField init_uniform(double L, std::size_t N, const PrimitiveState& state0,
                           BoundaryKind boundary, double x_min, double h_factor) {
    if (!(L > 0.0)) throw InvalidConfig("domain length must be positive");
    if (N < 4) throw InvalidConfig("field needs at least 4 particles");
    if (!state0.valid()) throw InvalidConfig("initial state needs positive rho and T");
    if (!(h_factor > 0.0)) throw InvalidConfig("h_factor must be positive");

    ParticleField f;
    f.x_min = x_min;
    f.x_max = x_min + L;
    f.dx0 = L / static_cast<double>(N);
    f.h = h_factor * f.dx0;
    f.boundary = boundary;
    f.left_state = state0;
    f.right_state = state0;
    f.x.resize(N);
    f.rho.assign(N, state0.rho);
    f.u.assign(N, state0.u);
    f.T.assign(N, state0.T);
    for (std::size_t i = 0; i < N; ++i) {
        f.x[i] = x_min + (static_cast<double>(i) + 0.5) * f.dx0;
    }
    return f;
}

std::vector<std::size_t> neighbors(const ParticleField& f, double pos,
                                   std::ptrdiff_t exclude) {
    const double L = f.length();
    std::vector<std::pair<double, std::size_t>> cand;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (static_cast<std::ptrdiff_t>(i) == exclude) continue;
        double d = std::abs(f.x[i] - pos);
        if (f.boundary == BoundaryKind::Periodic) d = std::min(d, L - d);
        if (d <= f.h) cand.emplace_back(d, i);
    }
    if (cand.size() < 2) {
        throw InsufficientNeighborhood("fewer than 2 particles inside interaction radius");
    }
    std::sort(cand.begin(), cand.end());
    std::vector<std::size_t> out(cand.size());
    for (std::size_t i = 0; i < cand.size(); ++i) out[i] = cand[i].second;
    return out;
}

ManageResult manage_particles(ParticleField& f, double gap_min, double gap_max) {
    if (f.size() < 4) throw DegenerateField("field has fewer than 4 particles");
    const double lo = gap_min * f.dx0;
    const double hi = gap_max * f.dx0;
    const bool wrap = f.boundary == BoundaryKind::Periodic;
    const double L = f.length();
    ManageResult res;

    // Merge pass. Handle one pair per round so indices stay valid, repeat until
    // nothing qualifies. Merging only widens the surrounding gaps, so this
    // terminates quickly.
    for (bool changed = true; changed;) {
        changed = false;
        const std::size_t n = f.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (f.x[i + 1] - f.x[i] < lo) {
                if (n == 4) throw DegenerateField("merging would leave fewer than 4 particles");
                const double pos = 0.5 * (f.x[i] + f.x[i + 1]);
                const PrimitiveState s = mean_state(state_at(f, i), state_at(f, i + 1));
                erase_at(f, i + 1);
                f.x[i] = pos;
                f.rho[i] = s.rho;
                f.u[i] = s.u;
                f.T[i] = s.T;
                ++res.removed;
                changed = true;
                break;
            }
        }
        if (changed || !wrap) continue;
        // pair straddling the periodic seam
        const std::size_t n2 = f.size();
        const double gap = (f.x[0] - f.x_min) + (f.x_max - f.x[n2 - 1]);
        if (gap < lo) {
            if (n2 == 4) throw DegenerateField("merging would leave fewer than 4 particles");
            double pos = f.x[n2 - 1] + 0.5 * gap;
            if (pos >= f.x_max) pos -= L;
            const PrimitiveState s = mean_state(state_at(f, n2 - 1), state_at(f, 0));
            erase_at(f, n2 - 1);
            erase_at(f, 0);
            insert_at(f, sorted_pos(f, pos), pos, s);
            ++res.removed;
            changed = true;
        }
    }

    // Insert pass: split oversized gaps at the midpoint with the averaged
    // state. A split gap can still exceed the threshold, hence the loop.
    for (bool changed = true; changed;) {
        changed = false;
        const std::size_t n = f.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (f.x[i + 1] - f.x[i] > hi) {
                const double pos = 0.5 * (f.x[i] + f.x[i + 1]);
                const PrimitiveState s = mean_state(state_at(f, i), state_at(f, i + 1));
                insert_at(f, i + 1, pos, s);
                ++res.added;
                changed = true;
                break;
            }
        }
        if (changed || !wrap) continue;
        const std::size_t n2 = f.size();
        const double gap = (f.x[0] - f.x_min) + (f.x_max - f.x[n2 - 1]);
        if (gap > hi) {
            double pos = f.x[n2 - 1] + 0.5 * gap;
            if (pos >= f.x_max) pos -= L;
            const PrimitiveState s = mean_state(state_at(f, n2 - 1), state_at(f, 0));
            insert_at(f, sorted_pos(f, pos), pos, s);
            ++res.added;
            changed = true;
        }
    }
    return res;
}

void apply_boundary(ParticleField& f, double gap_max) {
    if (f.boundary == BoundaryKind::Periodic) {
        const double L = f.length();
        for (auto& xi : f.x) {
            while (xi < f.x_min) xi += L;
            while (xi >= f.x_max) xi -= L;
        }
        sort_by_position(f);  // wrapped particles re-enter on the other side
        return;
    }

    for (std::size_t i = f.size(); i-- > 0;) {
        if (f.x[i] < f.x_min || f.x[i] > f.x_max) erase_at(f, i);
    }
    if (f.size() == 0) throw DegenerateField("all particles left the domain");
    // Top up from the reservoirs so the walls never starve the stencils.
    const double hi = gap_max * f.dx0;
    while (f.x.front() - f.x_min > hi) {
        insert_at(f, 0, f.x.front() - f.dx0, f.left_state);
    }
    while (f.x_max - f.x.back() > hi) {
        insert_at(f, f.size(), f.x.back() + f.dx0, f.right_state);
    }
    if (f.size() < 4) throw DegenerateField("field has fewer than 4 particles");
}

void build_extended(const ParticleField& f, ExtendedField& out) {
    out.x.clear();
    out.rho.clear();
    out.u.clear();
    out.T.clear();
    out.ghost_src.clear();
    const std::size_t n = f.size();

    const auto push = [&out](double x, const PrimitiveState& s, long src) {
        out.x.push_back(x);
        out.rho.push_back(s.rho);
        out.u.push_back(s.u);
        out.T.push_back(s.T);
        out.ghost_src.push_back(src);
    };

    if (f.boundary == BoundaryKind::Periodic) {
        const double L = f.length();
        // particles near the right wall reappear below x_min
        for (std::size_t i = 0; i < n; ++i) {
            if (f.x[i] > f.x_max - f.h) push(f.x[i] - L, state_at(f, i), static_cast<long>(i));
        }
        out.ng_left = out.x.size();
        out.x.insert(out.x.end(), f.x.begin(), f.x.end());
        out.rho.insert(out.rho.end(), f.rho.begin(), f.rho.end());
        out.u.insert(out.u.end(), f.u.begin(), f.u.end());
        out.T.insert(out.T.end(), f.T.begin(), f.T.end());
        for (std::size_t i = 0; i < n; ++i) {
            if (f.x[i] < f.x_min + f.h) push(f.x[i] + L, state_at(f, i), static_cast<long>(i));
        }
        out.ng_right = out.x.size() - n - out.ng_left;
        return;
    }

    // Reservoir ghosts on a fresh lattice continuing the initial spacing.
    const auto ngh = static_cast<std::size_t>(std::ceil(f.h / f.dx0 + 0.5));
    for (std::size_t k = ngh; k >= 1; --k) {
        push(f.x_min - (static_cast<double>(k) - 0.5) * f.dx0, f.left_state, -1);
    }
    out.ng_left = ngh;
    out.x.insert(out.x.end(), f.x.begin(), f.x.end());
    out.rho.insert(out.rho.end(), f.rho.begin(), f.rho.end());
    out.u.insert(out.u.end(), f.u.begin(), f.u.end());
    out.T.insert(out.T.end(), f.T.begin(), f.T.end());
    for (std::size_t k = 1; k <= ngh; ++k) {
        push(f.x_max + (static_cast<double>(k) - 0.5) * f.dx0, f.right_state, -1);
    }
    out.ng_right = ngh;
}

void snapshot_header(std::ostream& os) { os << "step,x,rho,u,T\n"; }

void snapshot_csv(const ParticleField& f, long step, std::ostream& os) {
    const auto flags = os.flags();
    const auto prec = os.precision();
    os << std::setprecision(17);
    for (std::size_t i = 0; i < f.size(); ++i) {
        os << step << ',' << f.x[i] << ',' << f.rho[i] << ',' << f.u[i] << ','
           << f.T[i] << '\n';
    }
    os.flags(flags);
    os.precision(prec);
}

}  // namespace fhd
