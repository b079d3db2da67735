use super::grid::GridSpec;
use super::report::{ConditionReport, ItemBuilder, ItemResult, Status, Witness};
use super::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Bias {
    Confirmation,
    Negativity,
}

struct Ids {
    closer: &'static str,
    equidistant: &'static str,
    existence: &'static str,
    neutral: &'static str,
}

impl Bias {
    fn ids(self) -> Ids {
        match self {
            Bias::Confirmation => Ids {
                closer: "7a-1",
                equidistant: "7a-2",
                existence: "7a-3-existence",
                neutral: "7b",
            },
            Bias::Negativity => Ids {
                closer: "8a-1",
                equidistant: "8a-2",
                existence: "8a-3-existence",
                neutral: "8b",
            },
        }
    }

    fn name(self) -> &'static str {
        match self {
            Bias::Confirmation => "confirmation",
            Bias::Negativity => "negativity",
        }
    }
}

/// Checks a confirmation weight `c(x_i, x_j)` against items `7a-1`, `7a-2`,
/// `7a-3-existence` and `7b`.
pub fn check_confirmation(
    c: impl Fn(f64, f64) -> f64,
    grid: &GridSpec,
    tol: &Tolerances,
) -> ConditionReport {
    scan(&c, grid, tol, Bias::Confirmation)
}

/// Checks a negativity weight `c̄(x̄_i, x_j)` against items `8a-1`, `8a-2`,
/// `8a-3-existence` and `8b`.
pub fn check_negativity(
    c: impl Fn(f64, f64) -> f64,
    grid: &GridSpec,
    tol: &Tolerances,
) -> ConditionReport {
    scan(&c, grid, tol, Bias::Negativity)
}

/// Tracks an existence item separately for references on the negative
/// (`side = 0`) and positive (`side = 1`) half of the spectrum.
struct Existence {
    item: &'static str,
    cap: usize,
    hypotheses: [u64; 2],
    realized: [u64; 2],
    realizations: Vec<Witness>,
    best_miss: [Option<(f64, Witness)>; 2],
    pair_realized: Vec<bool>,
    pair_seen: Vec<bool>,
    n: usize,
}

impl Existence {
    fn new(item: &'static str, cap: usize, n: usize) -> Self {
        Existence {
            item,
            cap: cap.max(1),
            hypotheses: [0; 2],
            realized: [0; 2],
            realizations: Vec::new(),
            best_miss: [None, None],
            pair_realized: vec![false; n * n],
            pair_seen: vec![false; n * n],
            n,
        }
    }

    /// `anchor` is the grid index of the opinion on the reference's side.
    fn observe(
        &mut self,
        reference: usize,
        anchor: usize,
        side: usize,
        margin: f64,
        realized: bool,
        w: Witness,
    ) {
        self.hypotheses[side] += 1;
        let pair = reference * self.n + anchor;
        self.pair_seen[pair] = true;
        if realized {
            self.realized[side] += 1;
            self.pair_realized[pair] = true;
            if self.realizations.len() < self.cap {
                self.realizations.push(w);
            }
        } else {
            let better = match &self.best_miss[side] {
                None => true,
                Some((m, _)) => margin > *m,
            };
            if better {
                self.best_miss[side] = Some((margin, w));
            }
        }
    }

    fn finish(self) -> ItemResult {
        let failing: Vec<usize> = (0..2)
            .filter(|&s| self.hypotheses[s] > 0 && self.realized[s] == 0)
            .collect();
        let checked = self.hypotheses[0] + self.hypotheses[1];
        let realized = self.realized[0] + self.realized[1];
        let pairs = self.pair_seen.iter().filter(|&&b| b).count();
        let pairs_realized = self.pair_realized.iter().filter(|&&b| b).count();
        let mut note = format!(
            "realized by {realized} of {checked} tuples; {pairs_realized} of {pairs} (reference, same-side opinion) pairs admit a realization"
        );
        let (status, witnesses) = if failing.is_empty() {
            (Status::Pass, self.realizations)
        } else {
            let sides: Vec<&str> = failing
                .iter()
                .map(|&s| if s == 0 { "negative" } else { "positive" })
                .collect();
            note.push_str(&format!(
                "; no realization with a {} reference, witnesses are the closest misses",
                sides.join(" or ")
            ));
            let mut misses = self.best_miss;
            let witnesses = failing
                .iter()
                .filter_map(|&s| misses[s].take().map(|(_, w)| w))
                .take(self.cap)
                .collect();
            (Status::Fail, witnesses)
        };
        ItemResult {
            item: self.item.to_string(),
            status,
            checked,
            violations: checked - realized,
            witnesses,
            note: Some(note),
        }
    }
}

fn scan(
    c: &dyn Fn(f64, f64) -> f64,
    grid: &GridSpec,
    tol: &Tolerances,
    bias: Bias,
) -> ConditionReport {
    let n = grid.resolution();
    let h = grid.step();
    let cap = grid.max_witnesses();
    let pts = grid.points();
    let signs: Vec<i32> = (0..n).map(|k| grid.sign(k)).collect();

    // table[r * n + k] = c(pts[r], pts[k])
    let mut table = Vec::with_capacity(n * n);
    for &a in &pts {
        for &b in &pts {
            table.push(c(a, b));
        }
    }

    let ids = bias.ids();
    let mut closer = ItemBuilder::new(ids.closer, cap);
    let mut equidistant = ItemBuilder::new(ids.equidistant, cap);
    let mut existence = Existence::new(ids.existence, cap, n);

    for r in 0..n {
        let sr = signs[r];
        let row = &table[r * n..(r + 1) * n];
        for j in 0..n {
            let sj = signs[j];
            let dj = r.abs_diff(j) as i64;
            for d in 0..n {
                if d == j {
                    continue;
                }
                let sd = signs[d];
                let dd = r.abs_diff(d) as i64;
                let (cj, cd) = (row[j], row[d]);
                let favored = cj > cd + tol.strict;
                let witness = |ratio: Option<f64>| Witness::Triple {
                    x_i: pts[r],
                    x_j: pts[j],
                    x_d: pts[d],
                    c_j: cj,
                    c_d: cd,
                    ratio,
                };
                // how much farther x_d is than x_j, in grid steps
                let gap = dd - dj;
                let ordering = sr * (j as i64 - d as i64).signum() as i32;
                let equal = (gap.unsigned_abs() as f64) * h <= tol.distance;
                match bias {
                    Bias::Confirmation => {
                        if sj * sd > 0 && (gap as f64) * h > tol.distance {
                            closer.record(favored, || witness(None));
                        }
                        if equal && ordering > 0 {
                            equidistant.record(favored, || witness(None));
                        }
                        if sr != 0 && sr * sd > 0 && sr * sj < 0 && dj < dd {
                            let ratio = dj as f64 / dd as f64;
                            existence.observe(
                                r,
                                d,
                                side(sr),
                                cj - cd,
                                favored,
                                witness(Some(ratio)),
                            );
                        }
                    }
                    Bias::Negativity => {
                        if sj * sd > 0 && (-gap as f64) * h > tol.distance {
                            closer.record(favored, || witness(None));
                        }
                        if equal && ordering < 0 {
                            equidistant.record(favored, || witness(None));
                        }
                        if sr != 0 && sr * sj > 0 && sr * sd < 0 && dd < dj {
                            let ratio = dd as f64 / dj as f64;
                            existence.observe(
                                r,
                                j,
                                side(sr),
                                cj - cd,
                                favored,
                                witness(Some(ratio)),
                            );
                        }
                    }
                }
            }
        }
    }

    let mut neutral = ItemBuilder::new(ids.neutral, cap);
    let center = grid.center();
    let zero_row = &table[center * n..(center + 1) * n];
    for k in center + 1..n {
        let mirror = n - 1 - k;
        let (va, vb) = (zero_row[k], zero_row[mirror]);
        neutral.record((va - vb).abs() <= tol.equality, || Witness::Pair {
            a: pts[k],
            b: pts[mirror],
            value_a: va,
            value_b: vb,
        });
    }

    let mut closer = closer.finish();
    if !closer.passed() {
        closer.note = Some(straddle_note(&closer));
    }

    ConditionReport {
        condition: bias.name().to_string(),
        resolution: n,
        orientation: None,
        items: vec![
            closer,
            equidistant.finish(),
            existence.finish(),
            neutral.finish(),
        ],
    }
}

#[inline]
fn side(sign: i32) -> usize {
    usize::from(sign > 0)
}

/// Counts how many of the listed witnesses have the two opinions on
/// opposite sides of the reference.
fn straddle_note(item: &ItemResult) -> String {
    let straddling = item
        .witnesses
        .iter()
        .filter(|w| match w {
            Witness::Triple { x_i, x_j, x_d, .. } => (x_j - x_i) * (x_d - x_i) < 0.0,
            _ => false,
        })
        .count();
    format!(
        "{straddling} of {} listed witnesses have x_j and x_d on opposite sides of the reference opinion",
        item.witnesses.len()
    )
}
