#pragma once

#include "coverbound/agent_set.hpp"

#include <cstddef>
#include <functional>

namespace coverbound {

// Set function over indices 0..ground_size()-1, with an incremental session
// (reset / gain / commit) used by the greedy engine.
class SetObjective
{
public:
    virtual ~SetObjective() = default;

    [[nodiscard]] virtual std::size_t ground_size() const = 0;
    [[nodiscard]] virtual double value(const AgentSet& s) const = 0;

    // Clears the working set.
    virtual void reset() = 0;
    // F(W + {e}) - F(W) for the working set W.
    [[nodiscard]] virtual double gain(std::size_t element) const = 0;
    virtual void commit(std::size_t element) = 0;
    // F(W).
    [[nodiscard]] virtual double current() const = 0;
};

// Wraps a plain callable; every gain costs two evaluations.
class FunctionObjective final : public SetObjective
{
public:
    FunctionObjective(std::size_t ground_size, std::function<double(const AgentSet&)> fn);

    [[nodiscard]] std::size_t ground_size() const override { return ground_size_; }
    [[nodiscard]] double value(const AgentSet& s) const override { return fn_(s); }
    void reset() override;
    [[nodiscard]] double gain(std::size_t element) const override;
    void commit(std::size_t element) override;
    [[nodiscard]] double current() const override { return current_; }

private:
    std::size_t ground_size_;
    std::function<double(const AgentSet&)> fn_;
    AgentSet work_;
    double current_ = 0.0;
};

} // namespace coverbound
