#pragma once

// Index of a partition polynomial: a multiset of positive even integers,
// kept sorted descending so equal multisets compare equal.

#include "powsum/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace powsum {

class MultiIndex {
public:
    explicit MultiIndex(std::vector<int> parts) : parts_(std::move(parts)) {
        if (parts_.empty())
            throw Error(errc::bad_input, "multi-index needs at least one part");
        for (int p : parts_)
            if (p < 2 || p % 2 != 0)
                throw Error(errc::bad_input,
                            "multi-index parts must be even integers >= 2");
        std::sort(parts_.begin(), parts_.end(), std::greater<>());
    }

    MultiIndex(std::initializer_list<int> parts)
        : MultiIndex(std::vector<int>(parts)) {}

    static MultiIndex parse(const std::string& text) {
        std::vector<int> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            parts.push_back(std::stoi(item));
        }
        return MultiIndex(std::move(parts));
    }

    const std::vector<int>& parts() const { return parts_; }
    int size() const { return static_cast<int>(parts_.size()); }
    int order() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

    // this index with the part at position pos removed; empty result allowed
    std::vector<int> without(int pos) const {
        std::vector<int> rest;
        rest.reserve(parts_.size() - 1);
        for (int i = 0; i < size(); ++i)
            if (i != pos) rest.push_back(parts_[i]);
        return rest;
    }

    std::string str() const {
        std::string out;
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(parts_[i]);
        }
        return out;
    }

    bool operator==(const MultiIndex& o) const { return parts_ == o.parts_; }
    bool operator<(const MultiIndex& o) const { return parts_ < o.parts_; }

private:
    std::vector<int> parts_;
};

}  // namespace powsum
