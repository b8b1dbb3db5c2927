//! Single-level mixed-binary export in the LP text format.
//!
//! The bilevel problem linearizes through the per-group dual expressions:
//! for each follower group `k`, a continuous variable `t_k` must dominate the
//! dual expression at the breakpoint selected by the binaries `z_k_j`
//! (exactly one per group), while the other breakpoints are relaxed by the
//! tightest valid big-M, the expression's value at the all-zero blocking
//! decision. Minimizing the sum of the `t_k` under the leader's capacity
//! rows reproduces the interdiction optimum on the scaled-integer grid.
//!
//! Variable naming: `x_<element>` (binary, original element index),
//! `z_<group>_<breakpoint>` (binary, breakpoint in `0..=n`), `t_<group>`
//! (continuous, nonnegative by the LP-format default bound). Rows are
//! `lead_<group>`, `sel_<group>` and `bm_<group>_<breakpoint>`.

use crate::model::SortedInstance;

const LINE_WIDTH: usize = 72;

struct Row {
    name: String,
    /// `(coefficient, variable)` pairs; zero coefficients are skipped.
    terms: Vec<(i64, String)>,
    op: &'static str,
    rhs: i64,
}

fn push_wrapped(out: &mut String, head: &str, pieces: &[String]) {
    let mut line = String::from(head);
    for piece in pieces {
        if line.len() + piece.len() + 1 > LINE_WIDTH && line.len() > head.len() {
            out.push_str(&line);
            out.push('\n');
            line = String::from("   ");
        }
        line.push(' ');
        line.push_str(piece);
    }
    out.push_str(&line);
    out.push('\n');
}

fn render_row(out: &mut String, row: &Row) {
    let mut pieces = Vec::new();
    let mut first = true;
    for &(coef, ref var) in &row.terms {
        if coef == 0 {
            continue;
        }
        let sign = if first {
            if coef < 0 { "- " } else { "" }
        } else if coef < 0 {
            "- "
        } else {
            "+ "
        };
        let magnitude = coef.unsigned_abs();
        if magnitude == 1 {
            pieces.push(format!("{sign}{var}"));
        } else {
            pieces.push(format!("{sign}{magnitude} {var}"));
        }
        first = false;
    }
    if first {
        pieces.push("0 one_is_never_emitted".into());
        debug_assert!(false, "rows always carry at least one term");
    }
    pieces.push(format!("{} {}", row.op, row.rhs));
    push_wrapped(out, &format!(" {}:", row.name), &pieces);
}

/// Renders the instance as a deterministic LP-format text. The optimum of
/// the exported program equals the interdiction optimum in scaled integers.
pub fn export_ilp(sorted: &SortedInstance) -> String {
    let instance = sorted.base();
    let n = sorted.n();
    let k_l = instance.num_leader_groups();
    let k_f = instance.num_follower_groups();

    let mut out = String::new();
    out.push_str("\\ partition matroid interdiction, single-level big-M reformulation\n");
    out.push_str(&format!(
        "\\ n = {n}, leader groups = {k_l}, follower groups = {k_f}, scale = {}\n",
        sorted.scale()
    ));
    out.push_str("\\ x_<element>: blocking binaries; z_<group>_<breakpoint>: breakpoint\n");
    out.push_str("\\ selectors; t_<group>: follower value per group (scaled integers)\n");

    out.push_str("Minimize\n");
    let obj: Vec<String> = (0..k_f)
        .map(|k| if k == 0 { format!("t_{k}") } else { format!("+ t_{k}") })
        .collect();
    push_wrapped(&mut out, " obj:", &obj);

    out.push_str("Subject To\n");
    for (k, group) in instance.leader_groups().iter().enumerate() {
        render_row(
            &mut out,
            &Row {
                name: format!("lead_{k}"),
                terms: group.iter().map(|&i| (1, format!("x_{i}"))).collect(),
                op: "<=",
                rhs: instance.leader_budgets()[k] as i64,
            },
        );
    }
    for k in 0..k_f {
        render_row(
            &mut out,
            &Row {
                name: format!("sel_{k}"),
                terms: (0..=n).map(|j| (1, format!("z_{k}_{j}"))).collect(),
                op: "=",
                rhs: 1,
            },
        );
    }
    for k in 0..k_f {
        let f = instance.follower_budgets()[k] as i64;
        for j in 0..=n {
            let w_j = sorted.weight_at(j);
            // members of the group at positions above j, by element index
            let mut x_terms: Vec<(usize, i64)> = sorted
                .follower_positions(k)
                .iter()
                .filter(|&&pos| pos > j)
                .map(|&pos| (sorted.original_of(pos), sorted.weight_at(pos) - w_j))
                .collect();
            x_terms.sort_unstable();
            let big_m = w_j * f + x_terms.iter().map(|&(_, c)| c).sum::<i64>();

            let mut terms = vec![(1, format!("t_{k}"))];
            terms.extend(x_terms.into_iter().map(|(i, c)| (c, format!("x_{i}"))));
            terms.push((-big_m, format!("z_{k}_{j}")));
            render_row(
                &mut out,
                &Row {
                    name: format!("bm_{k}_{j}"),
                    terms,
                    op: ">=",
                    rhs: 0,
                },
            );
        }
    }

    out.push_str("Binaries\n");
    let mut binaries: Vec<String> = (0..n).map(|i| format!("x_{i}")).collect();
    for k in 0..k_f {
        for j in 0..=n {
            binaries.push(format!("z_{k}_{j}"));
        }
    }
    push_wrapped(&mut out, "", &binaries);
    out.push_str("End\n");
    out
}
