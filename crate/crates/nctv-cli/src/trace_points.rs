//! CSV export of the trace image: the points {(a + bθ)/k} ∩ [0, 1]
//! for |a|, |b| up to a bound, sorted by value, columns (a, b, value).

#[derive(Clone, Debug, PartialEq)]
pub struct TracePoint {
    pub a: i64,
    pub b: i64,
    pub value: f64,
}

pub fn trace_points(k: u64, theta: f64, bound: i64) -> Vec<TracePoint> {
    let mut pts = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            let value = (a as f64 + b as f64 * theta) / k as f64;
            if (0.0..=1.0).contains(&value) {
                pts.push(TracePoint { a, b, value });
            }
        }
    }
    pts.sort_by(|p, q| {
        p.value
            .partial_cmp(&q.value)
            .unwrap()
            .then(p.a.cmp(&q.a))
            .then(p.b.cmp(&q.b))
    });
    pts
}

pub fn to_csv(points: &[TracePoint]) -> String {
    let mut out = String::from("a,b,value\n");
    for p in points {
        out.push_str(&format!("{},{},{}\n", p.a, p.b, p.value));
    }
    out
}

/// CSV dump of a base Gaussian and its image under each group's
/// transform at one fiber, for plotting: columns x, then re/im pairs.
pub fn sample_dump(theta: f64, grid_n: usize, grid_l: f64) -> Result<String, String> {
    use nctv_core::grp::FiniteGroup;
    use nctv_core::walters::{sample_gaussian, transform_w, Grid, KernelCache};

    let grid = Grid::new(grid_l, grid_n).map_err(|e| e.to_string())?;
    let cache = KernelCache::new();
    let base = sample_gaussian(&grid, theta, 0.0, 1.0).map_err(|e| e.to_string())?;
    let mut columns = vec![("base".to_string(), base.clone())];
    for k in [2u64, 3, 4, 6] {
        let group = FiniteGroup::cyclic(k).map_err(|e| e.to_string())?;
        let w = transform_w(&group, &base, false, &cache).map_err(|e| e.to_string())?;
        columns.push((format!("w{k}"), w));
    }
    let mut out = String::from("x");
    for (name, _) in &columns {
        out.push_str(&format!(",{name}_re,{name}_im"));
    }
    out.push('\n');
    for j in 0..grid.len() {
        out.push_str(&format!("{}", grid.x(j)));
        for (_, f) in &columns {
            out.push_str(&format!(",{},{}", f.samples[j].re, f.samples[j].im));
        }
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_always_present() {
        for theta in [0.1, 0.37, 0.93] {
            let pts = trace_points(2, theta, 2);
            assert!(pts.iter().any(|p| p.a == 0 && p.b == 0 && p.value == 0.0));
        }
    }

    #[test]
    fn golden_ratio_rows() {
        let theta = 0.6180339887498949;
        let pts = trace_points(2, theta, 2);
        assert!(pts.iter().any(|p| (p.a, p.b) == (1, 0) && (p.value - 0.5).abs() < 1e-12));
        assert!(pts
            .iter()
            .any(|p| (p.a, p.b) == (0, 1) && (p.value - theta / 2.0).abs() < 1e-12));
    }

    #[test]
    fn z6_bound_one_values() {
        let theta = 0.37;
        let pts = trace_points(6, theta, 1);
        let vals: Vec<f64> = pts.iter().map(|p| p.value).collect();
        let expect = [0.0, theta / 6.0, (1.0 - theta) / 6.0, 1.0 / 6.0, (1.0 + theta) / 6.0];
        for e in expect {
            assert!(
                vals.iter().any(|v| (v - e).abs() < 1e-12),
                "missing value {e} in {vals:?}"
            );
        }
        // sorted ascending
        for w in vals.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }
}
