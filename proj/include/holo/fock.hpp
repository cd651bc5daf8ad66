#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "holo/errors.hpp"
#include "holo/linalg.hpp"

namespace holo {

// Photon count per waveguide; length M+1, entries sum to the layer's N.
using OccupationVector = std::vector<int>;

inline std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t acc = 1;
    for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
    return acc;
}

// Ordered basis of the N-photon layer over M+1 modes with bidirectional
// index maps. States are held in descending lexicographic order of the
// occupation vectors, so matrices built on the basis are reproducible.
class FockBasis {
public:
    static FockBasis enumerate_layer(int photon_number, int modes) {
        if (modes < 2 || photon_number < 0) {
            throw InvalidLayer("enumerate_layer: need modes >= 2 and photon_number >= 0");
        }
        FockBasis basis;
        basis.photon_number_ = photon_number;
        basis.modes_ = modes;
        OccupationVector occ(static_cast<std::size_t>(modes), 0);
        basis.fill(occ, 0, photon_number);
        for (int k = 0; k < basis.size(); ++k) {
            basis.index_.emplace(basis.states_[static_cast<std::size_t>(k)], k);
        }
        return basis;
    }

    int photon_number() const { return photon_number_; }
    int modes() const { return modes_; }
    int size() const { return static_cast<int>(states_.size()); }

    const OccupationVector& state(int k) const { return states_.at(static_cast<std::size_t>(k)); }

    bool contains(const OccupationVector& occ) const { return index_.count(occ) > 0; }

    int index_of(const OccupationVector& occ) const {
        auto it = index_.find(occ);
        if (it == index_.end()) throw InvalidLayer("index_of: occupation vector not in this layer");
        return it->second;
    }

    // Matrix of a_source a^dag_target restricted to the layer; mode indices
    // are 1-based with M+1 the central waveguide. Entry <out|a_s a^dag_t|in>
    // is sqrt(n_s (n_t + 1)) when out equals in with one photon moved s->t.
    Matrix hop_matrix(int source, int target) const {
        if (source == target) throw InvalidHop("hop_matrix: self-hops are not defined");
        if (source < 1 || source > modes_ || target < 1 || target > modes_) {
            throw InvalidHop("hop_matrix: mode index out of range");
        }
        const int s = source - 1;
        const int t = target - 1;
        Matrix mat = Matrix::Zero(size(), size());
        for (int k = 0; k < size(); ++k) {
            const OccupationVector& in = states_[static_cast<std::size_t>(k)];
            if (in[static_cast<std::size_t>(s)] == 0) continue;
            OccupationVector out = in;
            out[static_cast<std::size_t>(s)] -= 1;
            out[static_cast<std::size_t>(t)] += 1;
            const double amp = std::sqrt(static_cast<double>(in[static_cast<std::size_t>(s)]) *
                                         static_cast<double>(in[static_cast<std::size_t>(t)] + 1));
            mat(index_of(out), k) = amp;
        }
        return mat;
    }

    // Unit vector of a single Fock state.
    Vector unit_state(const OccupationVector& occ) const {
        Vector v = Vector::Zero(size());
        v[index_of(occ)] = Complex(1.0, 0.0);
        return v;
    }

private:
    FockBasis() = default;

    void fill(OccupationVector& occ, int mode, int remaining) {
        if (mode == modes_ - 1) {
            occ[static_cast<std::size_t>(mode)] = remaining;
            states_.push_back(occ);
            return;
        }
        for (int n = remaining; n >= 0; --n) {
            occ[static_cast<std::size_t>(mode)] = n;
            fill(occ, mode + 1, remaining - n);
        }
        occ[static_cast<std::size_t>(mode)] = 0;
    }

    int photon_number_ = 0;
    int modes_ = 0;
    std::vector<OccupationVector> states_;
    std::map<OccupationVector, int> index_;
};

} // namespace holo
