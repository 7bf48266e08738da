#pragma once

#include "darcy/solver.hpp"
#include "darcy/study.hpp"

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

namespace darcy::io {

/// 12 significant digits, scientific; "inf" and "nan" for non-finite values.
std::string format_number(double v);

/// One row per run:
///   method,l,k,nx,h,eL2_u,eH1semi_u,eDiv_u,eRotLambda_u,eL2_p,eH1semi_p,
///   neg_log10_h,log10_eL2_u,...,log10_eH1semi_p
/// followed by "#rate,method,l,k,norm,pairwise,slope" footer lines for every
/// table with at least two rows.
void write_csv(std::ostream &os, const StudyResult &study);

nlohmann::ordered_json to_json(const StudyResult &study);
/// Inverse of to_json. Throws InvalidArgument on a malformed document.
StudyResult study_from_json(const nlohmann::ordered_json &doc);

void write_json(std::ostream &os, const StudyResult &study);

/// "x y u1 u2 p" for every mesh vertex.
void write_fields(std::ostream &os, const DiscreteSolution &solution);

} // namespace darcy::io
