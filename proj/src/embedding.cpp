#include "diar/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diar {

double l2_norm(const EmbeddingVector& v) {
    double sum = 0.0;
    for (double x : v) {
        sum += x * x;
    }
    return std::sqrt(sum);
}

EmbeddingVector normalized(const EmbeddingVector& v) {
    const double norm = l2_norm(v);
    if (norm == 0.0) {
        throw std::invalid_argument("cannot normalize a zero-norm vector");
    }
    EmbeddingVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = v[i] / norm;
    }
    return out;
}

void add_in_place(EmbeddingVector& acc, const EmbeddingVector& v) {
    if (acc.size() != v.size()) {
        throw std::invalid_argument("dimension mismatch: " + std::to_string(acc.size()) +
                                    " vs " + std::to_string(v.size()));
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        acc[i] += v[i];
    }
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()));
    }
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) {
        throw std::invalid_argument("cosine similarity of a zero-norm vector is undefined");
    }
    return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

EmbeddingVector centroid(const std::vector<EmbeddingVector>& vectors) {
    if (vectors.empty()) {
        throw std::invalid_argument("centroid of an empty set is undefined");
    }
    EmbeddingVector sum(vectors.front().size(), 0.0);
    for (const EmbeddingVector& v : vectors) {
        add_in_place(sum, v);
    }
    for (double& x : sum) {
        x /= static_cast<double>(vectors.size());
    }
    return normalized(sum);
}

}  // namespace diar
