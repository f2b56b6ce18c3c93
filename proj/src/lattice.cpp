#include "galton/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace galton {

bool is_valid_site(Site s) {
    return s.n >= 1 && std::abs(s.x) <= s.n && (s.x - s.n) % 2 == 0;
}

std::vector<Site> sites(int N) {
    std::vector<Site> out;
    out.reserve(size_t(N) * (N + 3) / 2);
    for (int n = 1; n <= N; ++n)
        for (int x = -n; x <= n; x += 2) out.push_back({n, x});
    return out;
}

std::vector<Site> predecessors(Site s) {
    std::vector<Site> out;
    for (int k = 1; k < s.n; ++k) {
        for (int x : {s.x - k, s.x + k}) {
            Site q{s.n - k, x};
            if (is_valid_site(q)) out.push_back(q);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double source_coefficient(Site s) {
    return std::abs(s.x) == s.n ? 1.0 / std::sqrt(2.0) : 0.0;
}

bool in_light_cone(Site src, Site dst) {
    return dst.n >= src.n && std::abs(dst.x - src.x) <= dst.n - src.n;
}

Site mirror(Site s) { return {s.n, -s.x}; }

const char* dir_name(Dir d) { return d == Dir::L ? "L" : "R"; }

Dir flip(Dir d) { return d == Dir::L ? Dir::R : Dir::L; }

bool is_valid_detector(DetectorId det, int N) {
    return std::abs(det.x) <= N && (det.x - N) % 2 == 0;
}

std::vector<DetectorId> detectors(int N) {
    std::vector<DetectorId> out;
    out.reserve(2 * (N + 1));
    for (int x = -N; x <= N; x += 2) {
        out.push_back({x, Dir::L});
        out.push_back({x, Dir::R});
    }
    return out;
}

DetectorId mirror(DetectorId det) { return {-det.x, flip(det.d)}; }

DetectorExpansion detector_expansion(DetectorId det, int N) {
    if (!is_valid_detector(det, N))
        throw InvalidDetectorError("detector (" + std::to_string(det.x) + "," +
                                   dir_name(det.d) + ") invalid for N=" + std::to_string(N));
    DetectorExpansion out;
    // (x,R) reads waveguide (x-N, +) which couples atoms (n, m+n);
    // (x,L) reads waveguide (x+N, -) which couples atoms (n, m-n).
    const int m = det.d == Dir::R ? det.x - N : det.x + N;
    out.waveguide_m = m;
    out.boundary_coeff = m == 0 ? 1.0 / std::sqrt(2.0) : 0.0;
    for (int n = 1; n <= N; ++n) {
        Site s{n, det.d == Dir::R ? m + n : m - n};
        if (is_valid_site(s)) out.atoms.push_back(s);
    }
    return out;
}

} // namespace galton
