#include "madtradeoff/holder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace madt {

namespace {

double adaptive_simpson_step(const std::function<double(double)>& f,
                             double lo, double hi, double flo, double fmid,
                             double fhi, double whole, double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid);
    const double rmid = 0.5 * (mid + hi);
    const double flm = f(lmid);
    const double frm = f(rmid);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_step(f, lo, mid, flo, flm, fmid, left, 0.5 * tol,
                                 depth - 1) +
           adaptive_simpson_step(f, mid, hi, fmid, frm, fhi, right, 0.5 * tol,
                                 depth - 1);
}

// dense sampling with local refinement around the max
double sup_abs(const std::function<double(double)>& f, double lo, double hi) {
    double best_x = lo, best = 0.0;
    const int n = 20000;
    for (int i = 0; i <= n; ++i) {
        const double x = lo + (hi - lo) * i / n;
        const double v = std::fabs(f(x));
        if (v > best) {
            best = v;
            best_x = x;
        }
    }
    double radius = (hi - lo) / n;
    for (int round = 0; round < 6; ++round) {
        const double a = std::max(lo, best_x - radius);
        const double b = std::min(hi, best_x + radius);
        for (int i = 0; i <= 400; ++i) {
            const double x = a + (b - a) * i / 400;
            const double v = std::fabs(f(x));
            if (v > best) {
                best = v;
                best_x = x;
            }
        }
        radius /= 50.0;
    }
    return best;
}

double sup_quotient_dense(const std::function<double(double)>& f,
                          double lo, double hi, double alpha) {
    const int n = 2000;
    std::vector<double> xs(n + 1), vs(n + 1);
    for (int i = 0; i <= n; ++i) {
        xs[i] = lo + (hi - lo) * i / n;
        vs[i] = f(xs[i]);
    }
    double best = 0.0;
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const double q =
                std::fabs(vs[i] - vs[j]) / std::pow(xs[j] - xs[i], alpha);
            best = std::max(best, q);
        }
    return best;
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f,
                          double lo, double hi, double tol) {
    const double mid = 0.5 * (lo + hi);
    const double flo = f(lo), fmid = f(mid), fhi = f(hi);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    return adaptive_simpson_step(f, lo, hi, flo, fmid, fhi, whole, tol, 40);
}

int holder_floor(double beta) {
    const int c = static_cast<int>(std::ceil(beta));
    return c - 1;  // largest integer strictly below beta
}

KernelSpec bump_kernel(double beta) {
    if (!(beta > 0.0) || beta > 2.0)
        throw std::invalid_argument("bump_kernel: beta must lie in (0, 2]");
    KernelSpec k;
    k.beta = beta;
    k.support_radius = 1.0;
    k.eval = [](double x) {
        if (std::fabs(x) >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - x * x));
    };
    k.deriv = [eval = k.eval](double x) {
        if (std::fabs(x) >= 1.0) return 0.0;
        const double u = 1.0 - x * x;
        return -2.0 * x / (u * u) * eval(x);
    };
    k.deriv2 = [eval = k.eval](double x) {
        if (std::fabs(x) >= 1.0) return 0.0;
        const double u = 1.0 - x * x;
        const double gp = -2.0 * x / (u * u);
        const double gpp = -2.0 / (u * u) - 8.0 * x * x / (u * u * u);
        return (gpp + gp * gp) * eval(x);
    };
    k.l2_norm_sq =
        integrate_adaptive([&k](double x) { return k.eval(x) * k.eval(x); },
                           -1.0, 1.0, 1e-13);

    const int fl = holder_floor(beta);
    const double alpha = beta - fl;
    double norm = sup_abs(k.eval, -1.0, 1.0);
    if (fl >= 1) norm += sup_abs(k.deriv, -1.0, 1.0);
    const auto& top = fl == 0 ? k.eval : k.deriv;
    if (std::fabs(alpha - 1.0) < 1e-12) {
        norm += sup_abs(fl == 0 ? k.deriv : k.deriv2, -1.0, 1.0);
    } else {
        norm += sup_quotient_dense(top, -1.1, 1.1, alpha);
    }
    k.holder_norm = norm;
    return k;
}

double holder_norm(const GridFunction& f, double beta) {
    if (!(beta > 0.0) || beta > 2.0)
        throw std::invalid_argument("holder_norm: beta must lie in (0, 2] on grids");
    const std::size_t m = f.size();
    const double dx = 1.0 / static_cast<double>(m);
    const int fl = holder_floor(beta);
    const double alpha = beta - fl;

    std::vector<double> d0(f.values());
    std::vector<double> d1(m);
    for (std::size_t j = 0; j < m; ++j) {
        if (j == 0)
            d1[j] = (d0[1] - d0[0]) / dx;
        else if (j == m - 1)
            d1[j] = (d0[m - 1] - d0[m - 2]) / dx;
        else
            d1[j] = (d0[j + 1] - d0[j - 1]) / (2.0 * dx);
    }

    auto sup = [](const std::vector<double>& v) {
        double best = 0.0;
        for (double t : v) best = std::max(best, std::fabs(t));
        return best;
    };

    double norm = sup(d0);
    if (fl >= 1) norm += sup(d1);

    const std::vector<double>& top = fl == 0 ? d0 : d1;
    double quotient = 0.0;
    if (std::fabs(alpha - 1.0) < 1e-12) {
        // exponent one: the sup quotient is attained on adjacent points
        for (std::size_t j = 0; j + 1 < m; ++j)
            quotient = std::max(quotient, std::fabs(top[j + 1] - top[j]) / dx);
    } else {
        if (m > 8192)
            throw std::invalid_argument(
                "holder_norm: grid too large for the all-pairs sup quotient");
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                const double gap = static_cast<double>(j - i) * dx;
                quotient = std::max(
                    quotient, std::fabs(top[i] - top[j]) / std::pow(gap, alpha));
            }
    }
    return norm + quotient;
}

FamilySpec make_family_spec(double beta, double R, double C,
                            const KernelSpec& kernel, double n,
                            double theta, double x0) {
    if (!(beta > 0.0) || !(R > 0.0) || !(C > 0.0) || !(n > 0.0))
        throw std::invalid_argument("make_family_spec: parameters must be positive");
    if (std::fabs(theta) > 1.0)
        throw std::invalid_argument("make_family_spec: |theta| must be <= 1");
    FamilySpec spec;
    spec.beta = beta;
    spec.R = R;
    spec.C = C;
    spec.theta = theta;
    spec.x0 = x0;
    spec.V = R / kernel.holder_norm;
    spec.r_n = std::pow(2.0 / spec.V, 1.0 / beta) *
               std::pow(C / n, 1.0 / (2.0 * beta + 1.0));
    return spec;
}

GridFunction build_family_member(const FamilySpec& spec, const KernelSpec& kernel,
                                 std::size_t m) {
    if (spec.r_n > 1.0) {
        const double min_n = spec.C *
            std::pow(2.0 / spec.V, (2.0 * spec.beta + 1.0) / spec.beta);
        throw std::invalid_argument(
            "build_family_member: r_n = " + std::to_string(spec.r_n) +
            " > 1; smallest admissible n is " + std::to_string(min_n));
    }
    const double amplitude = spec.theta * spec.V * std::pow(spec.r_n, spec.beta);
    return GridFunction::from_function(m, [&](double x) {
        return amplitude * kernel.eval((x - spec.x0) / spec.r_n);
    });
}

HolderBallCheck check_in_holder_ball(const GridFunction& f, double beta, double R) {
    HolderBallCheck res;
    res.norm = holder_norm(f, beta);
    res.margin = R - res.norm;
    res.inside = res.margin >= 0.0;
    return res;
}

} // namespace madt
