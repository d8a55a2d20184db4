#include "coverbound/objective.hpp"

namespace coverbound {

FunctionObjective::FunctionObjective(std::size_t ground_size, std::function<double(const AgentSet&)> fn)
    : ground_size_(ground_size), fn_(std::move(fn))
{
    reset();
}

void FunctionObjective::reset()
{
    work_ = AgentSet{};
    current_ = fn_(work_);
}

double FunctionObjective::gain(std::size_t element) const
{
    return fn_(work_.with(element)) - current_;
}

void FunctionObjective::commit(std::size_t element)
{
    work_ = work_.with(element);
    current_ = fn_(work_);
}

} // namespace coverbound
