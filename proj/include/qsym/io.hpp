#ifndef QSYM_IO_HPP
#define QSYM_IO_HPP

#include "qsym/classical.hpp"
#include "qsym/fusion.hpp"
#include "qsym/group.hpp"
#include "qsym/magic.hpp"
#include "qsym/partition.hpp"
#include "qsym/tensor_operator.hpp"

#include <nlohmann/json.hpp>

#include <optional>

namespace qsym::io {

using Json = nlohmann::json;

// Rationals travel as [num, den]; numbers that do not fit in 64 bits are
// written as decimal strings.
Json to_json(const Rational& q);
Json to_json(const Integer& z);
Rational rational_from_json(const Json& j);

Json to_json(const SetPartition& p);
SetPartition partition_from_json(const Json& j);

Json to_json(const TensorOperator& t);
TensorOperator operator_from_json(const Json& j);

Json to_json(const FusionLabel& l);
FusionLabel label_from_json(const Json& j);
Json to_json(const Decomposition& d);

/// {"N", "d", "entries"}: entries[i*N + j] is u_ij, row-major [num, den] pairs.
Json to_json(const MatrixModel<Rational>& m);
MatrixModel<Rational> model_from_json(const Json& j);

Json to_json(const CheckResult& c);
Json to_json(const Report& r);

/// Quantum rules cannot be serialized; quantum_model_ref names the rule
/// kind ("standard") when one is attached, null otherwise.
Json to_json(const FiniteAction& a);
FiniteAction action_from_json(const Json& j);

Json to_json(const HuangModel& m);
HuangModel huang_model_from_json(const Json& j);
Json to_json(const HnHuangModel& m);
HnHuangModel hn_model_from_json(const Json& j);

Json census_json(int N, std::optional<long> index = std::nullopt);

}  // namespace qsym::io

#endif
