#include "ecdl/serialize.hpp"

namespace ecdl {

using nlohmann::json;

json instance_to_json(const DlpInstance& inst) {
  return json{{"p", to_dec(inst.curve.p)}, {"a", to_dec(inst.curve.a)},
              {"b", to_dec(inst.curve.b)}, {"Px", to_dec(inst.base.x)},
              {"Py", to_dec(inst.base.y)}, {"q", to_dec(inst.q)},
              {"d", to_dec(inst.d)},       {"Qx", to_dec(inst.target.x)},
              {"Qy", to_dec(inst.target.y)}};
}

DlpInstance instance_from_json(const json& j) {
  CurveParams curve(from_dec(j.at("p").get<std::string>()),
                    from_dec(j.at("a").get<std::string>()),
                    from_dec(j.at("b").get<std::string>()));
  DlpInstance inst{curve,
                   Point::affine(from_dec(j.at("Px").get<std::string>()),
                                 from_dec(j.at("Py").get<std::string>())),
                   from_dec(j.at("q").get<std::string>()),
                   from_dec(j.at("d").get<std::string>()),
                   Point::affine(from_dec(j.at("Qx").get<std::string>()),
                                 from_dec(j.at("Qy").get<std::string>()))};
  inst.validate();
  return inst;
}

json inverse_result_to_json(const InverseResult& r, const Int& p, const Int& x) {
  json jq = json::array();
  for (const Int& q : r.quotients) jq.push_back(to_dec(q));
  json out{{"p", to_dec(p)},
           {"x", to_dec(x)},
           {"inverse", to_dec(r.inverse)},
           {"raw_output", to_dec(r.raw_output)},
           {"correction_flag", r.correction_flag},
           {"cycles_used", r.cycles_used},
           {"halting_count", r.halting_count},
           {"cycle_budget", r.cycle_budget},
           {"quotients", jq},
           {"ledger",
            {{"one_qubit_additions", r.ledger.one_qubit_additions()},
             {"cq_add_units", r.ledger.cq_add_units},
             {"qq_add_units", r.ledger.qq_add_units},
             {"compare_units", r.ledger.compare_units},
             {"swap_units", r.ledger.swap_units}}}};
  if (r.failure) {
    out["failure"] = (*r.failure == ModeledFailure::BoundedQuotientOverflow)
                         ? "bounded_quotient_overflow"
                         : "sharing_overflow";
  } else {
    out["failure"] = nullptr;
  }
  return out;
}

json record_to_json(const MeasurementRecord& rec, unsigned window, unsigned n_bits, const Int& q,
                    std::uint64_t seed) {
  json out{{"x_prime", rec.x_prime}, {"y_prime", rec.y_prime}, {"k", rec.k},
           {"window", window},       {"n", n_bits},            {"q", to_dec(q)},
           {"seed", seed}};
  if (rec.recovered_d)
    out["recovered_d"] = to_dec(*rec.recovered_d);
  else
    out["recovered_d"] = nullptr;
  return out;
}

}  // namespace ecdl
