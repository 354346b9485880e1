use std::fmt::Write;

use super::LefschetzReport;

pub(super) fn text(r: &LefschetzReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "foliation        {} (dim {})", r.foliation, r.foliation_dim);
    let _ = writeln!(s, "class            {}", r.anosov_class);
    if let Some(f) = &r.scalar_field {
        let _ = writeln!(s, "scalars          Q({}), {} a root of {}", f.symbol, f.symbol, f.min_poly);
    }
    let _ = writeln!(s, "det(1 - f_*|g)   {}", r.det_one_minus_full);
    let _ = writeln!(s, "fixed points     {}", r.fixed_point_count);
    for x in &r.fixed_points {
        let c: Vec<String> = x.coords.iter().map(ToString::to_string).collect();
        let g: Vec<String> = x.gamma.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "  ({})  gamma ({})", c.join(", "), g.join(", "));
    }
    if !r.cohomology_traces.is_empty() {
        let t: Vec<String> = r.cohomology_traces.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "traces on H^p(p) {}", t.join(", "));
    }
    let _ = writeln!(s, "cohomology side  {}", r.lhs_cohomology);
    let _ = writeln!(s, "det(1 - f_*|p)   {}", r.lhs_determinant);
    let _ = writeln!(s, "fixed-point sum  {}", r.rhs_fixed_point_sum);
    let _ = writeln!(s, "local sign       {:+}", r.local_sign);
    let _ = writeln!(s, "|det(1-f_*|g/p)| {}", r.transverse_det);
    if let Some(a) = &r.acceptability {
        let _ = writeln!(s, "acceptable       {}", a.overall);
        for l in a.layers.iter().filter(|l| !l.dense) {
            let w: Vec<String> = l.witness.iter().flatten().map(ToString::to_string).collect();
            let _ = writeln!(s, "  layer {} not dense, witness ({})", l.j, w.join(", "));
        }
    }
    let _ = writeln!(s, "verdict          {}", r.verdict);
    s
}
