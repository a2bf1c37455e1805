#include "netga/benchmarks.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace netga {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

void check_dimension(const ObjectiveSpec& spec, const Genome& x) {
    if (static_cast<int>(x.size()) != spec.dimension) {
        throw std::invalid_argument("genome has " + std::to_string(x.size()) +
                                    " coordinates, objective expects " +
                                    std::to_string(spec.dimension));
    }
}

double rastrigin(const Genome& x) {
    double sum = 0.0;
    for (double xi : x) {
        sum += xi * xi - 10.0 * std::cos(two_pi * xi);
    }
    return 10.0 * static_cast<double>(x.size()) + sum;
}

double sphere(const Genome& x) {
    double sum = 0.0;
    for (double xi : x) {
        sum += xi * xi;
    }
    return sum;
}

double ackley(const Genome& x) {
    const double d = static_cast<double>(x.size());
    double square_sum = 0.0;
    double cos_sum = 0.0;
    for (double xi : x) {
        square_sum += xi * xi;
        cos_sum += std::cos(two_pi * xi);
    }
    return -20.0 * std::exp(-0.2 * std::sqrt(square_sum / d)) -
           std::exp(cos_sum / d) + std::numbers::e + 20.0;
}

}  // namespace

std::string to_string(ObjectiveId id) {
    switch (id) {
        case ObjectiveId::Rastrigin: return "rastrigin";
        case ObjectiveId::Sphere: return "sphere";
        case ObjectiveId::Ackley: return "ackley";
    }
    throw std::invalid_argument("unknown objective id");
}

ObjectiveId objective_from_string(std::string_view name) {
    if (name == "rastrigin") return ObjectiveId::Rastrigin;
    if (name == "sphere") return ObjectiveId::Sphere;
    if (name == "ackley") return ObjectiveId::Ackley;
    throw std::invalid_argument("unknown objective \"" + std::string(name) +
                                "\" (expected rastrigin|sphere|ackley)");
}

ObjectiveSpec ObjectiveSpec::defaults(ObjectiveId id, int dimension) {
    const double bound = (id == ObjectiveId::Ackley) ? 32.768 : 5.12;
    ObjectiveSpec spec;
    spec.id = id;
    spec.dimension = dimension;
    spec.lower_bound = -bound;
    spec.upper_bound = bound;
    spec.validate();
    return spec;
}

void ObjectiveSpec::validate() const {
    if (dimension < 1) {
        throw std::invalid_argument("objective dimension must be >= 1");
    }
    if (!(lower_bound < upper_bound)) {
        throw std::invalid_argument("objective bounds must satisfy lower < upper");
    }
}

double evaluate(const ObjectiveSpec& spec, const Genome& x) {
    check_dimension(spec, x);
    switch (spec.id) {
        case ObjectiveId::Rastrigin: return rastrigin(x);
        case ObjectiveId::Sphere: return sphere(x);
        case ObjectiveId::Ackley: return ackley(x);
    }
    throw std::invalid_argument("unknown objective id");
}

Genome clamp_to_domain(const ObjectiveSpec& spec, Genome x) {
    check_dimension(spec, x);
    for (double& xi : x) {
        if (xi < spec.lower_bound) xi = spec.lower_bound;
        if (xi > spec.upper_bound) xi = spec.upper_bound;
    }
    return x;
}

}  // namespace netga
