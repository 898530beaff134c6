#include "fixtures.hpp"

namespace fixtures {

Matrix rows(std::initializer_list<std::initializer_list<double>> values) {
    const auto n = static_cast<totpos::Index>(values.size());
    const auto m = static_cast<totpos::Index>(values.begin()->size());
    Matrix out(n, m);
    totpos::Index i = 0;
    for (const auto& row : values) {
        totpos::Index j = 0;
        for (double v : row) out(i, j++) = v;
        ++i;
    }
    return out;
}

Matrix carcass_r() {
    return rows({{1.00, 0.04, 0.84, 0.08, 0.82, -0.03},
                 {0.04, 1.00, 0.04, 0.87, 0.13, 0.86},
                 {0.84, 0.04, 1.00, 0.01, 0.83, -0.03},
                 {0.08, 0.87, 0.01, 1.00, 0.11, 0.90},
                 {0.82, 0.13, 0.83, 0.11, 1.00, 0.02},
                 {-0.03, 0.86, -0.03, 0.90, 0.02, 1.00}});
}

std::vector<std::string> carcass_labels() {
    return {"Fat11", "Meat11", "Fat12", "Meat12", "Fat13", "Meat13"};
}

Matrix carcass_rhat_printed() {
    return rows({{1.00, 0.10, 0.84, 0.09, 0.82, 0.09},
                 {0.10, 1.00, 0.11, 0.87, 0.13, 0.86},
                 {0.84, 0.11, 1.00, 0.09, 0.83, 0.09},
                 {0.09, 0.87, 0.09, 1.00, 0.11, 0.90},
                 {0.82, 0.13, 0.83, 0.11, 1.00, 0.11},
                 {0.09, 0.86, 0.09, 0.90, 0.11, 1.00}});
}

Matrix linkage_r() {
    return rows({{1.0, -0.5, 0.5, 0.6},
                 {-0.5, 1.0, 0.4, -0.1},
                 {0.5, 0.4, 1.0, 0.2},
                 {0.6, -0.1, 0.2, 1.0}});
}

Matrix linkage_z_printed() {
    return rows({{1.0, 0.4, 0.5, 0.6},
                 {0.4, 1.0, 0.4, 0.4},
                 {0.5, 0.4, 1.0, 0.5},
                 {0.6, 0.4, 0.5, 1.0}});
}

Matrix star_k_printed() {
    return rows({{1.0, -0.116, 0.0, 0.0, -0.433},
                 {-0.116, 1.0, -0.097, -0.034, 0.0},
                 {0.0, -0.097, 1.0, -0.149, -0.413},
                 {0.0, -0.034, -0.149, 1.0, -0.604},
                 {-0.433, 0.0, -0.413, -0.604, 1.0}});
}

Matrix star_r_printed() {
    return rows({{1.0, 0.2861, 0.5745, 0.6242, 0.7299},
                 {0.2861, 1.0, 0.2864, 0.2696, 0.2872},
                 {0.5745, 0.2864, 1.0, 0.7149, 0.7800},
                 {0.6242, 0.2696, 0.7149, 1.0, 0.8523},
                 {0.7299, 0.2872, 0.7800, 0.8523, 1.0}});
}

Matrix signed_counterexample_r() {
    return rows({{1.0, 0.3, 0.11, 0.3},
                 {0.3, 1.0, -0.1, -0.1},
                 {0.11, -0.1, 1.0, -0.1},
                 {0.3, -0.1, -0.1, 1.0}});
}

}  // namespace fixtures
