#include "splitprob/eigensystem.hpp"

namespace splitprob::spectral {

Eigensystem ripening_eigensystem(const RipeningParams& p) {
    const double r = p.r, s = p.s;
    Eigensystem es;
    es.hidden_space = OutcomeSpace::labels({"U", "R", "S"});
    es.eigenvalues = Eigen::ArrayXd(3);
    es.eigenvalues << 0.0, r, s;
    es.left_modes = Eigen::MatrixXd(3, 3);
    es.right_modes = Eigen::MatrixXd(3, 3);
    es.left_modes << 0.0, 0.0, 1.0,
                     s - r, r, -s,
                     0.0, -1.0, 1.0;
    es.right_modes << 1.0, 1.0, 1.0,
                      1.0 / (s - r), 0.0, 0.0,
                      -r / (r - s), -1.0, 0.0;
    return es;
}

namespace {

// He_n(z)/sqrt(n!) for n = 0..N-1; bounded in n, so safe for large N.
Eigen::ArrayXd scaled_hermite_all(double z, int n_modes) {
    Eigen::ArrayXd h(n_modes);
    h(0) = 1.0;
    if (n_modes > 1) h(1) = z;
    for (int n = 1; n + 1 < n_modes; ++n)
        h(n + 1) = (z * h(n) - std::sqrt(double(n)) * h(n - 1)) / std::sqrt(double(n + 1));
    return h;
}

}  // namespace

Eigensystem ou_eigensystem(const OUParams& p, int n_modes, const OutcomeSpace& grid) {
    if (n_modes < 1) throw Error("need at least one OU mode");
    if (n_modes > 250)
        throw Error("ou_eigensystem stores at most 250 modes; use spectral::ou_joint for more");
    if (!grid.is_grid()) throw Error("OU hidden space must be a grid");
    const double ell = p.ell();
    const auto& y = grid.grid_points();
    if (y(0) > -6.0 * ell || y(y.size() - 1) < 6.0 * ell)
        throw GridTooNarrow("OU grid must cover at least [-6 ell, 6 ell]");

    Eigensystem es;
    es.hidden_space = grid;
    es.eigenvalues = p.mu * Eigen::ArrayXd::LinSpaced(n_modes, 0.0, double(n_modes - 1));
    es.right_modes = Eigen::MatrixXd(n_modes, y.size());
    es.left_modes = Eigen::MatrixXd(n_modes, y.size());

    // sqrt(n!) factors restoring the conventional normalisation from the scaled recurrence
    Eigen::ArrayXd sqrt_fact(n_modes);
    sqrt_fact(0) = 1.0;
    for (int n = 1; n < n_modes; ++n) sqrt_fact(n) = sqrt_fact(n - 1) * std::sqrt(double(n));

    const double gauss_norm = 1.0 / (ell * std::sqrt(2.0 * M_PI));
    for (Eigen::Index j = 0; j < y.size(); ++j) {
        const double z = y(j) / ell;
        const Eigen::ArrayXd h = scaled_hermite_all(z, n_modes);
        const double w = gauss_norm * std::exp(-0.5 * z * z);
        es.right_modes.col(j) = (h * sqrt_fact).matrix();          // He_n(z)
        es.left_modes.col(j) = (h / sqrt_fact * w).matrix();       // He_n(z) w(z)/n!
    }

    const int nm = n_modes;
    es.right_at = [ell, nm](double y0) -> Eigen::ArrayXd {
        Eigen::ArrayXd sf(nm);
        sf(0) = 1.0;
        for (int n = 1; n < nm; ++n) sf(n) = sf(n - 1) * std::sqrt(double(n));
        return scaled_hermite_all(y0 / ell, nm) * sf;
    };
    es.left_at = [ell, nm, gauss_norm](double yv) -> Eigen::ArrayXd {
        Eigen::ArrayXd sf(nm);
        sf(0) = 1.0;
        for (int n = 1; n < nm; ++n) sf(n) = sf(n - 1) * std::sqrt(double(n));
        const double z = yv / ell;
        return scaled_hermite_all(z, nm) / sf * (gauss_norm * std::exp(-0.5 * z * z));
    };
    return es;
}

OutcomeSpace ou_default_grid(const OUParams& p) {
    const double ell = p.ell();
    return OutcomeSpace::grid(-8.0 * ell, 8.0 * ell, 321);
}

Eigensystem telegraph_eigensystem(double rate) {
    if (!(rate > 0.0)) throw Error("telegraph rate must be positive");
    Eigensystem es;
    es.hidden_space = OutcomeSpace::labels({"on", "off"});
    es.eigenvalues = Eigen::ArrayXd(2);
    es.eigenvalues << 0.0, 2.0 * rate;
    es.left_modes = Eigen::MatrixXd(2, 2);
    es.right_modes = Eigen::MatrixXd(2, 2);
    es.left_modes << 0.5, 0.5,
                     0.5, -0.5;
    es.right_modes << 1.0, 1.0,
                      1.0, -1.0;
    return es;
}

}  // namespace splitprob::spectral
