#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace coverbound {

// Set of ground-set indices in canonical (sorted, distinct) form.
class AgentSet
{
public:
    AgentSet() = default;
    // Sorts the indices; throws std::invalid_argument on duplicates.
    explicit AgentSet(std::vector<std::size_t> indices);

    [[nodiscard]] static AgentSet range(std::size_t count);

    [[nodiscard]] std::span<const std::size_t> indices() const { return indices_; }
    [[nodiscard]] std::size_t size() const { return indices_.size(); }
    [[nodiscard]] bool empty() const { return indices_.empty(); }
    [[nodiscard]] bool contains(std::size_t i) const;
    [[nodiscard]] std::size_t max_index() const;

    [[nodiscard]] AgentSet with(std::size_t i) const;
    [[nodiscard]] AgentSet without(std::size_t i) const;
    [[nodiscard]] AgentSet unite(const AgentSet& other) const;
    [[nodiscard]] AgentSet minus(const AgentSet& other) const;
    [[nodiscard]] bool intersects(const AgentSet& other) const;
    [[nodiscard]] bool subset_of(const AgentSet& other) const;

    [[nodiscard]] auto begin() const { return indices_.begin(); }
    [[nodiscard]] auto end() const { return indices_.end(); }

    friend bool operator==(const AgentSet&, const AgentSet&) = default;

private:
    std::vector<std::size_t> indices_;
};

} // namespace coverbound
