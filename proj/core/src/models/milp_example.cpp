#include "resd/models/milp_example.hpp"

namespace resd::models {

sip::EsipProblem build_milp_example() {
  sip::EsipProblem p;
  p.name = "milp-example";
  p.base.add_var("x1", 0.0, 100.0, 2.0);
  p.base.add_var("x2", 0.0, 100.0, 1.0);
  p.num_design = 2;
  p.num_y = 2;
  p.y_names = {"y1", "b"};

  p.op.vars = {{"z1", 0.0, 100.0}, {"z2", 0.0, 100.0}};
  sip::PolyRow r1{sip::Poly{}.add_z(0, 1.0).add_x(0, -1.0), false, sip::RowRole::kPhysics, "z1_cap"};
  sip::PolyRow r2{sip::Poly{}.add_z(1, 1.0).add_x(1, -1.0), false, sip::RowRole::kPhysics, "z2_cap"};
  p.op.rows = {r1, r2};
  p.op.value.add_y(0, 1.0).add_z(0, -1.0).add_yz(1, 1, -1.0);

  sip::PolyRow g{sip::Poly{}.add_y(0, 1.0).add_x(1, -0.2).add_y(1, -100.0), false, sip::RowRole::kPhysics, "part_load"};
  p.coupling = {g};

  sip::ExplicitSet ex;
  ex.vars = {{"y1", 0.0, 100.0, false}, {"b", 0.0, 1.0, true}};
  p.uncertainty = ex;
  return p;
}

}  // namespace resd::models
