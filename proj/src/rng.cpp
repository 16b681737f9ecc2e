#include "ri2d/rng.hpp"

namespace ri2d {

void AliasTable::build(const std::vector<double>& weights) {
    const std::size_t n = weights.size();
    if (n == 0) throw std::invalid_argument("alias table: empty distribution");
    double total = 0;
    for (double w : weights) {
        if (w < 0) throw std::invalid_argument("alias table: negative weight");
        total += w;
    }
    if (total <= 0) throw std::invalid_argument("alias table: zero total weight");

    prob_.assign(n, 0.0);
    alias_.assign(n, 0);
    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = weights[i] * double(n) / total;

    std::vector<int> small, large;
    small.reserve(n);
    large.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        (scaled[i] < 1.0 ? small : large).push_back(int(i));

    while (!small.empty() && !large.empty()) {
        int s = small.back(); small.pop_back();
        int l = large.back(); large.pop_back();
        prob_[s] = scaled[s];
        alias_[s] = l;
        scaled[l] = (scaled[l] + scaled[s]) - 1.0;
        (scaled[l] < 1.0 ? small : large).push_back(l);
    }
    for (int i : large) { prob_[i] = 1.0; alias_[i] = i; }
    for (int i : small) { prob_[i] = 1.0; alias_[i] = i; }
}

}  // namespace ri2d
