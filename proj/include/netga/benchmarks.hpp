#ifndef NETGA_BENCHMARKS_HPP
#define NETGA_BENCHMARKS_HPP

#include <string>
#include <string_view>
#include <vector>

namespace netga {

/// A candidate solution: d real coordinates inside the objective's domain.
using Genome = std::vector<double>;

enum class ObjectiveId { Rastrigin, Sphere, Ackley };

std::string to_string(ObjectiveId id);
ObjectiveId objective_from_string(std::string_view name);

/// Test function identity plus its search domain. Bounds are symmetric and
/// apply per coordinate.
struct ObjectiveSpec {
    ObjectiveId id = ObjectiveId::Rastrigin;
    int dimension = 2;
    double lower_bound = -5.12;
    double upper_bound = 5.12;

    /// Canonical domain for the given function: Rastrigin and Sphere on
    /// [-5.12, 5.12], Ackley on [-32.768, 32.768].
    static ObjectiveSpec defaults(ObjectiveId id, int dimension = 2);

    void validate() const;
};

/// Evaluates the objective at x. Minimisation; all three functions are
/// nonnegative on their domains with the global optimum f(0) = 0.
/// Throws std::invalid_argument if x.size() != spec.dimension.
double evaluate(const ObjectiveSpec& spec, const Genome& x);

/// Clips every coordinate into [lower_bound, upper_bound]. Idempotent.
Genome clamp_to_domain(const ObjectiveSpec& spec, Genome x);

}  // namespace netga

#endif
