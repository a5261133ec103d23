#pragma once

#include <cstddef>
#include <string_view>
#include <variant>
#include <vector>

#include "holodyn/core.hpp"
#include "holodyn/torus.hpp"

namespace holodyn {

enum class Space { Sphere, Torus };
std::string_view to_string(Space space);

template <class Point>
struct Atom {
    Point point;
    double weight;
};

using SphereAtom = Atom<SpherePoint>;
using TorusAtom = Atom<TorusPoint>;

// Finite weighted point set.  Probability measures (pullbacks, samples) have
// total mass 1; periodic-point measures may carry less.
class AtomicMeasure {
public:
    AtomicMeasure() : atoms_(std::vector<SphereAtom>{}) {}
    explicit AtomicMeasure(std::vector<SphereAtom> atoms);
    explicit AtomicMeasure(std::vector<TorusAtom> atoms);

    static AtomicMeasure dirac(const SpherePoint& x) { return AtomicMeasure(std::vector<SphereAtom>{{x, 1.0}}); }
    static AtomicMeasure dirac(const TorusPoint& x) { return AtomicMeasure(std::vector<TorusAtom>{{x, 1.0}}); }

    Space space() const { return atoms_.index() == 0 ? Space::Sphere : Space::Torus; }
    std::size_t size() const;
    bool empty() const { return size() == 0; }
    double total_mass() const;

    const std::vector<SphereAtom>& sphere_atoms() const;
    const std::vector<TorusAtom>& torus_atoms() const;

    // Sorts atoms into the canonical point order.
    void canonicalize();

    // Throws EmptyMeasure / InvalidArgument unless this is a probability measure.
    void require_probability(double tolerance = 1e-9) const;

private:
    std::variant<std::vector<SphereAtom>, std::vector<TorusAtom>> atoms_;
};

}  // namespace holodyn
