#include "coverbound/agent_set.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>
#include <stdexcept>
#include <string>

namespace coverbound {

AgentSet::AgentSet(std::vector<std::size_t> indices) : indices_(std::move(indices))
{
    std::sort(indices_.begin(), indices_.end());
    const auto dup = std::adjacent_find(indices_.begin(), indices_.end());
    if (dup != indices_.end()) {
        throw std::invalid_argument("agent set has duplicate index " + std::to_string(*dup));
    }
}

AgentSet AgentSet::range(std::size_t count)
{
    std::vector<std::size_t> all(count);
    std::iota(all.begin(), all.end(), std::size_t{0});
    AgentSet s;
    s.indices_ = std::move(all);
    return s;
}

bool AgentSet::contains(std::size_t i) const
{
    return std::binary_search(indices_.begin(), indices_.end(), i);
}

std::size_t AgentSet::max_index() const
{
    if (indices_.empty()) {
        throw std::logic_error("max_index of an empty agent set");
    }
    return indices_.back();
}

AgentSet AgentSet::with(std::size_t i) const
{
    AgentSet s = *this;
    const auto it = std::lower_bound(s.indices_.begin(), s.indices_.end(), i);
    if (it == s.indices_.end() || *it != i) {
        s.indices_.insert(it, i);
    }
    return s;
}

AgentSet AgentSet::without(std::size_t i) const
{
    AgentSet s = *this;
    const auto it = std::lower_bound(s.indices_.begin(), s.indices_.end(), i);
    if (it != s.indices_.end() && *it == i) {
        s.indices_.erase(it);
    }
    return s;
}

AgentSet AgentSet::unite(const AgentSet& other) const
{
    AgentSet s;
    std::set_union(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                   std::back_inserter(s.indices_));
    return s;
}

AgentSet AgentSet::minus(const AgentSet& other) const
{
    AgentSet s;
    std::set_difference(indices_.begin(), indices_.end(), other.indices_.begin(), other.indices_.end(),
                        std::back_inserter(s.indices_));
    return s;
}

bool AgentSet::intersects(const AgentSet& other) const
{
    auto a = indices_.begin();
    auto b = other.indices_.begin();
    while (a != indices_.end() && b != other.indices_.end()) {
        if (*a == *b) {
            return true;
        }
        if (*a < *b) {
            ++a;
        } else {
            ++b;
        }
    }
    return false;
}

bool AgentSet::subset_of(const AgentSet& other) const
{
    return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(), indices_.end());
}

} // namespace coverbound
