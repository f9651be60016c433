#pragma once

// The three automorphisms of y^2 = x^3 + t^3 (t^4 - 1) x over Q(zeta_16):
// the scaling sigma, its composite sigma_ast with translation by the
// 2-torsion section (0, 0), and the quotient tau = sigma o sigma_ast^-1.

#include "funfield.hpp"

namespace k3auto {

struct NamedMaps {
    SurfaceMap sigma;
    SurfaceMap sigma_ast;
    SurfaceMap tau;
    SurfaceMap translation;
};

/// Printed forms of the maps, as expression strings.
inline constexpr const char* kSigmaAstX = "z^6*(y^2-x^3)/x^2";
inline constexpr const char* kSigmaAstY = "z^9*(x^3*y-y^3)/x^3";
inline constexpr const char* kTranslationX = "(y^2-x^3)/x^2";
inline constexpr const char* kTranslationY = "(x^3*y-y^3)/x^3";

inline SurfaceMap map_from_strings(const CurveHandle& c, const std::string& xs, const std::string& ys,
                                   const std::string& ts) {
    const FieldHandle& f = c->model.field();
    return SurfaceMap::from_expressions(c, parse_expression(xs, "xyt", f), parse_expression(ys, "xyt", f),
                                        parse_expression(ts, "t", f));
}

/// Builds the maps from first principles and checks them against their
/// printed forms; throws std::logic_error on any mismatch.
inline NamedMaps build_named_maps(const CurveHandle& c) {
    if (!c->model.field() || c->model.field()->order() != 16) {
        throw Error(ErrorKind::InputError, "the named maps live over Q(zeta_16)");
    }
    const SurfaceMap sigma = scaling_map(c, 6, 9, 4);
    const SurfaceMap translation = translation_map(Section::affine(c, TFunction(), TFunction()), c);
    const SurfaceMap sigma_ast = compose(translation, sigma);
    if (sigma_ast != map_from_strings(c, kSigmaAstX, kSigmaAstY, "z^4*t")) {
        throw std::logic_error("sigma_ast differs from its printed formula");
    }
    const SurfaceMap tau = compose(sigma, inverse(sigma_ast));
    if (tau != translation || tau != map_from_strings(c, kTranslationX, kTranslationY, "t")) {
        throw std::logic_error("sigma o sigma_ast^-1 is not the translation by (0, 0)");
    }
    return {sigma, sigma_ast, tau, translation};
}

}  // namespace k3auto
