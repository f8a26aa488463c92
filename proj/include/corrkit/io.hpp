#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "corrkit/bell.hpp"
#include "corrkit/constructions.hpp"
#include "corrkit/schmidt.hpp"
#include "corrkit/state.hpp"

// JSON formats. Complex numbers are [re, im] pairs; matrices are row-major
// arrays of rows. Readers validate every invariant and throw InvalidState or
// InvalidArgument on malformed input.
namespace corrkit::io {

using Json = nlohmann::ordered_json;

Json to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"dims": [...], "matrix": [[[re,im],...],...]}
Json to_json(const DensityOperator& rho);
Json to_json(const PureState& psi);
/// Accepts the matrix form, or {"dims", "vector": [[re,im],...]} for pure
/// states.
DensityOperator density_from_json(const Json& j);

/// {"site": n, "kraus": [matrix, ...]}
Json to_json(const LocalChannel& ch);
LocalChannel channel_from_json(const Json& j);

/// {"site": n, "outcomes": [[matrix, ...], ...]}
Json to_json(const LocalMeasurement& m);
LocalMeasurement measurement_from_json(const Json& j);

/// {"X":2,"Y":2,"S":2,"T":2,"beta":[...],"local_bound":2.0}
Json to_json(const BellFunctional& f);
BellFunctional bell_functional_from_json(const Json& j);

/// {"d1":2,"d2":4,"Q":2,"p":[0.5,0.5]}
Json to_json(const MpsSpec& spec);
MpsSpec mps_spec_from_json(const Json& j);

/// Descending array of reals.
Json to_json(const SchmidtVector& v);
SchmidtVector schmidt_from_json(const Json& j);

Json to_json(const ReductionReport& r);

Json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const Json& j);

}  // namespace corrkit::io
