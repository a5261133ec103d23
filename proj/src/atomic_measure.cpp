#include "holodyn/atomic_measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "holodyn/errors.hpp"

namespace holodyn {

namespace {

template <class Point>
void check_weights(const std::vector<Atom<Point>>& atoms) {
    for (const auto& a : atoms) {
        if (!(a.weight > 0.0) || !std::isfinite(a.weight)) {
            throw Error(ErrorKind::InvalidArgument, "atom weights must be positive and finite");
        }
    }
}

}  // namespace

std::string_view to_string(Space space) { return space == Space::Sphere ? "sphere" : "torus"; }

AtomicMeasure::AtomicMeasure(std::vector<SphereAtom> atoms) : atoms_(std::move(atoms)) {
    check_weights(std::get<0>(atoms_));
}

AtomicMeasure::AtomicMeasure(std::vector<TorusAtom> atoms) : atoms_(std::move(atoms)) {
    check_weights(std::get<1>(atoms_));
}

std::size_t AtomicMeasure::size() const {
    return std::visit([](const auto& v) { return v.size(); }, atoms_);
}

double AtomicMeasure::total_mass() const {
    return std::visit(
        [](const auto& v) {
            double m = 0.0;
            for (const auto& a : v) m += a.weight;
            return m;
        },
        atoms_);
}

const std::vector<SphereAtom>& AtomicMeasure::sphere_atoms() const {
    if (atoms_.index() != 0) throw Error(ErrorKind::SpaceMismatch, "measure lives on the torus");
    return std::get<0>(atoms_);
}

const std::vector<TorusAtom>& AtomicMeasure::torus_atoms() const {
    if (atoms_.index() != 1) throw Error(ErrorKind::SpaceMismatch, "measure lives on the sphere");
    return std::get<1>(atoms_);
}

void AtomicMeasure::canonicalize() {
    std::visit(
        [](auto& v) {
            std::stable_sort(v.begin(), v.end(),
                             [](const auto& x, const auto& y) { return canonical_less(x.point, y.point); });
        },
        atoms_);
}

void AtomicMeasure::require_probability(double tolerance) const {
    if (empty()) throw Error(ErrorKind::EmptyMeasure, "measure has no atoms");
    const double m = total_mass();
    if (std::fabs(m - 1.0) > tolerance) {
        throw Error(ErrorKind::InvalidArgument, "total mass " + std::to_string(m) + " is not 1");
    }
}

}  // namespace holodyn
