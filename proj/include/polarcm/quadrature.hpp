// Gauss-Hermite rules and a small adaptive Simpson integrator.
#ifndef POLARCM_QUADRATURE_HPP
#define POLARCM_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace polarcm::quad {

// nodes/weights for \int e^{-t^2} f(t) dt ~ sum w_i f(t_i)  (physicists' form)
struct GaussHermite {
	std::vector<double> nodes;
	std::vector<double> weights;
};

// Newton iteration on the orthonormal Hermite recurrence (Numerical Recipes style).
inline GaussHermite gauss_hermite(int n) {
	if (n < 1) throw std::invalid_argument("gauss_hermite: need n >= 1");
	GaussHermite r;
	r.nodes.assign(n, 0.0);
	r.weights.assign(n, 0.0);
	const double pim4 = 0.7511255444649425;  // pi^{-1/4}
	int m = (n + 1) / 2;
	double z = 0.0, pp = 0.0;
	for (int i = 0; i < m; ++i) {
		if (i == 0) {
			z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
		} else if (i == 1) {
			z -= 1.14 * std::pow(n, 0.426) / z;
		} else if (i == 2) {
			z = 1.86 * z - 0.86 * r.nodes[0];
		} else if (i == 3) {
			z = 1.91 * z - 0.91 * r.nodes[1];
		} else {
			z = 2.0 * z - r.nodes[i - 2];
		}
		for (int it = 0; it < 100; ++it) {
			double p1 = pim4, p2 = 0.0;
			for (int j = 1; j <= n; ++j) {
				double p3 = p2;
				p2 = p1;
				p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
			}
			pp = std::sqrt(2.0 * n) * p2;
			double dz = p1 / pp;
			z -= dz;
			if (std::abs(dz) < 1e-15) break;
		}
		r.nodes[i] = z;
		r.nodes[n - 1 - i] = -z;
		r.weights[i] = 2.0 / (pp * pp);
		r.weights[n - 1 - i] = r.weights[i];
	}
	return r;
}

inline const GaussHermite& gh128() {
	static const GaussHermite r = gauss_hermite(128);
	return r;
}

// E[f(X)] for X ~ N(mean, var), via x = mean + sqrt(2 var) t
template <class F>
double gauss_expect(const GaussHermite& r, double mean, double var, F&& f) {
	const double s = std::sqrt(2.0 * var);
	const double inv_sqrt_pi = 0.5641895835477563;
	double acc = 0.0;
	for (std::size_t i = 0; i < r.nodes.size(); ++i)
		acc += r.weights[i] * f(mean + s * r.nodes[i]);
	return acc * inv_sqrt_pi;
}

namespace detail {
template <class F>
double simpson_rec(F& f, double a, double b, double fa, double fm, double fb, double whole,
                   double tol, int depth) {
	double m = 0.5 * (a + b);
	double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
	double flm = f(lm), frm = f(rm);
	double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
	double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
	if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
		return left + right + (left + right - whole) / 15.0;
	return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
	       simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}
}  // namespace detail

template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 40) {
	double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
	double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
	return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

}  // namespace polarcm::quad

#endif
