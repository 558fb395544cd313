#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "permlang/symbols.hpp"

namespace permlang {

// One-line notation: images[i-1] = sigma(i), a bijection on {1..k}.
struct Permutation {
    std::vector<int> images;

    int degree() const { return static_cast<int>(images.size()); }
    int operator()(int i) const { return images.at(static_cast<size_t>(i - 1)); }

    bool operator==(const Permutation& o) const { return images == o.images; }
    bool operator<(const Permutation& o) const {
        if (images.size() != o.images.size()) return images.size() < o.images.size();
        return images < o.images;
    }
};

inline void validate(const Permutation& p) {
    int k = p.degree();
    if (k < 1) throw ValidationError("permutation degree must be >= 1");
    std::vector<bool> seen(static_cast<size_t>(k), false);
    for (int v : p.images) {
        if (v < 1 || v > k || seen[static_cast<size_t>(v - 1)])
            throw ValidationError("permutation is not a bijection on {1.." + std::to_string(k) + "}");
        seen[static_cast<size_t>(v - 1)] = true;
    }
}

inline std::string format_permutation(const Permutation& p) {
    std::string s;
    for (size_t i = 0; i < p.images.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(p.images[i]);
    }
    return s;
}

inline Permutation identity_permutation(int k) {
    Permutation p;
    p.images.resize(static_cast<size_t>(k));
    std::iota(p.images.begin(), p.images.end(), 1);
    return p;
}

inline Permutation parse_permutation(const std::string& text) {
    Permutation p;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw ParseError("empty entry in permutation `" + text + "`");
        if (!std::all_of(cur.begin(), cur.end(),
                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
            cur.size() > 6)
            throw ParseError("bad permutation entry `" + cur + "`");
        p.images.push_back(std::stoi(cur));
        cur.clear();
    };
    for (char c : text) {
        if (c == ',') flush();
        else if (!std::isspace(static_cast<unsigned char>(c))) cur += c;
    }
    flush();
    validate(p);
    return p;
}

inline std::vector<Permutation> all_permutations(int k) {
    if (k < 1) throw ValidationError("permutation degree must be >= 1");
    Permutation p = identity_permutation(k);
    std::vector<Permutation> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.images.begin(), p.images.end()));
    return out;
}

// All permutations obtained by deleting any (proper, possibly empty) set of
// entries and renumbering the survivors order-isomorphically.  Includes p
// itself; the empty pattern is excluded.
inline std::set<Permutation> subpatterns(const Permutation& p) {
    validate(p);
    int k = p.degree();
    std::set<Permutation> out;
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        std::vector<int> kept;  // values sigma(i) for kept positions i, in position order
        for (int i = 0; i < k; ++i)
            if (mask & (1u << i)) kept.push_back(p.images[static_cast<size_t>(i)]);
        std::vector<int> sorted = kept;
        std::sort(sorted.begin(), sorted.end());
        Permutation q;
        for (int v : kept) {
            auto rank = std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin();
            q.images.push_back(static_cast<int>(rank) + 1);
        }
        out.insert(q);
    }
    return out;
}

}  // namespace permlang
