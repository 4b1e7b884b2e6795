#include "wcounts/exponents.hpp"

#include <algorithm>

#include "wcounts/errors.hpp"

namespace wcounts {

AValue a_of_lambda(const RootSystem& rs, const BoundarySelection& sel, const DivisorVector& lam) {
    if (static_cast<int>(lam.coeffs.size()) != rs.rank)
        throw validation_error("exponents", "divisor vector length mismatch");
    for (int i = 0; i < rs.rank; ++i)
        if (!(lam.coeffs[i] > Rational(0)))
            throw validation_error("exponents",
                                   "lambda_" + std::to_string(i + 1) + " = " +
                                       lam.coeffs[i].str() +
                                       " is not positive; lambda must lie in the interior of the "
                                       "effective cone");

    AValue out;
    bool first = true;
    for (int i = 0; i < rs.rank; ++i) {
        Rational num(sel.contains(i) ? rs.kappa[i] : rs.kappa[i] + 1);
        Rational ratio = num / lam.coeffs[i];
        if (first || ratio > out.a) {
            out.a = ratio;
            first = false;
        }
    }
    for (int i = 0; i < rs.rank; ++i) {
        Rational num(sel.contains(i) ? rs.kappa[i] : rs.kappa[i] + 1);
        if (num / lam.coeffs[i] == out.a) {
            if (sel.contains(i))
                out.achievers_D.push_back(i);
            else
                out.achievers_offD.push_back(i);
        }
    }
    return out;
}

ClemensComplex pruned_clemens(const RootSystem& rs, const BoundarySelection& sel,
                              const DivisorVector& lam, const Rational& a) {
    ClemensComplex cc;
    for (int idx : sel.indices) {
        // kappa_alpha <= a*lambda_alpha always holds by definition of a, so
        // surviving vertices are those with equality.
        if (Rational(rs.kappa[idx]) == a * lam.coeffs[idx]) cc.vertices.push_back(idx);
    }
    const size_t k = cc.vertices.size();
    if (k > 0) {
        // Full simplex: every nonempty subset of the vertex set is a face.
        if (k > 20) throw validation_error("exponents", "selection too large to expand faces");
        for (unsigned long mask = 1; mask < (1ul << k); ++mask) {
            std::vector<int> face;
            for (size_t i = 0; i < k; ++i)
                if (mask & (1ul << i)) face.push_back(cc.vertices[i]);
            cc.faces.push_back(std::move(face));
        }
    }
    cc.dimension = static_cast<int>(k) - 1;
    return cc;
}

int b_of_lambda(const DiagramAction& da, const BoundarySelection& sel, const DivisorVector& lam,
                const std::vector<Place>& places_S) {
    return exponent_report(da, sel, lam, places_S).b;
}

ExponentReport exponent_report(const DiagramAction& da, const BoundarySelection& sel,
                               const DivisorVector& lam, const std::vector<Place>& places_S) {
    validate_divisor_vector(da, lam);

    ExponentReport rep;
    AValue av = a_of_lambda(da.rs, sel, lam);
    rep.a = av.a;
    rep.achievers_D = std::move(av.achievers_D);
    rep.achievers_offD = std::move(av.achievers_offD);
    rep.pic_rank = pic_rank_complement(da, sel);

    ClemensComplex cc = pruned_clemens(da.rs, sel, lam, rep.a);
    rep.places = places_S;
    rep.b = rep.pic_rank;
    for (const auto& v : places_S) {
        (void)v; // split case: the pruned complex is place-independent
        rep.d_per_place.push_back(cc.dimension);
        rep.b += 1 + cc.dimension; // empty complex: 1 + (-1) = 0
    }
    return rep;
}

} // namespace wcounts
