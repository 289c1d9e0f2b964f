use std::fmt;

use super::{best_of_lines, criterion_lines, lambda_grid, CriterionLine};
use crate::error::Result;
use crate::normalize::PayoffMatrix;
use crate::scalar::{approx_eq, definitely_greater, Scalar};

/// Strategy selected on `[lo, hi]`. Interiors of consecutive regions are
/// disjoint; a shared endpoint belongs to whichever strategy the tie-break
/// picks there, which may be a third, zero-width region.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaRegion<T> {
    pub strategy: usize,
    pub lo: T,
    pub hi: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaRegionSet<T> {
    pub regions: Vec<LambdaRegion<T>>,
}

impl<T: Scalar> LambdaRegionSet<T> {
    /// Interior boundaries (excluding 0 and 1), deduplicated, ascending.
    pub fn breakpoints(&self) -> Vec<T> {
        let mut out: Vec<T> = Vec::new();
        for r in &self.regions {
            for x in [&r.lo, &r.hi] {
                let interior =
                    definitely_greater(x, &T::zero()) && definitely_greater(&T::one(), x);
                if interior && !out.iter().any(|b| approx_eq(b, x)) {
                    out.push(x.clone());
                }
            }
        }
        out
    }

    /// 0, every breakpoint, and 1: the points where V(λ) may bend.
    pub fn knots(&self) -> Vec<T> {
        let mut out = vec![T::zero()];
        out.extend(self.breakpoints());
        out.push(T::one());
        out
    }

    /// Strategies of every region whose closed interval contains `lambda`.
    pub fn strategies_at(&self, lambda: &T) -> Vec<usize> {
        self.regions
            .iter()
            .filter(|r| !definitely_greater(&r.lo, lambda) && !definitely_greater(lambda, &r.hi))
            .map(|r| r.strategy)
            .collect()
    }

    pub fn strategies(&self) -> Vec<usize> {
        self.regions.iter().map(|r| r.strategy).collect()
    }
}

/// Partition of [0, 1] by the strategy that maximizes the criterion, from the
/// upper envelope of the per-strategy criterion lines.
pub fn strategy_regions<T: Scalar>(matrix: &PayoffMatrix<T>) -> Result<LambdaRegionSet<T>> {
    let lines = criterion_lines(matrix)?;
    Ok(envelope_regions(&lines))
}

/// Among lines tied for the maximum at `x`, the one that stays on top just to
/// the right: steepest (least negative) slope, then lowest index.
fn right_of<T: Scalar>(lines: &[CriterionLine<T>], x: &T, top: &T) -> usize {
    let mut pick: Option<&CriterionLine<T>> = None;
    for line in lines.iter().filter(|l| approx_eq(&l.value_at(x), top)) {
        match pick {
            Some(p) if !definitely_greater(&line.slope, &p.slope) => {}
            _ => pick = Some(line),
        }
    }
    pick.expect("the maximizer is always tied with itself")
        .strategy
}

pub(crate) fn envelope_regions<T: Scalar>(lines: &[CriterionLine<T>]) -> LambdaRegionSet<T> {
    let one = T::one();
    let mut regions = Vec::new();
    let mut x = T::zero();
    let mut open: Option<(usize, T)> = None;
    loop {
        let (at_point, top) = best_of_lines(lines, &x);
        let at_end = !definitely_greater(&one, &x);
        let right = if at_end {
            None
        } else {
            Some(right_of(lines, &x, &top))
        };

        if let Some((left, start)) = open.take() {
            regions.push(LambdaRegion {
                strategy: left,
                lo: start,
                hi: x.clone(),
            });
            if at_point != left && Some(at_point) != right {
                regions.push(LambdaRegion {
                    strategy: at_point,
                    lo: x.clone(),
                    hi: x.clone(),
                });
            }
        } else if Some(at_point) != right {
            regions.push(LambdaRegion {
                strategy: at_point,
                lo: x.clone(),
                hi: x.clone(),
            });
        }

        let Some(right) = right else { break };
        let current = &lines[right];
        let next = lines
            .iter()
            .filter(|l| definitely_greater(&l.slope, &current.slope))
            .map(|l| {
                (l.intercept.clone() - current.intercept.clone())
                    / (current.slope.clone() - l.slope.clone())
            })
            .filter(|c| definitely_greater(c, &x))
            .fold(one.clone(), |acc, c| if c < acc { c } else { acc });
        open = Some((right, x));
        x = next;
    }
    LambdaRegionSet { regions }
}

/// Which λ values count as "belonging" to a strategy when inverting f*(λ).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InversionMode {
    /// λ where the tie-broken optimum is exactly this strategy.
    Selected,
    /// λ where the strategy attains the optimum, tied or not.
    Admissible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaInterval<T> {
    pub lo: T,
    pub hi: T,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl<T: Scalar> LambdaInterval<T> {
    pub fn closed(lo: T, hi: T) -> Self {
        LambdaInterval {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn open(lo: T, hi: T) -> Self {
        LambdaInterval {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn contains(&self, x: &T) -> bool {
        let above = if self.lo_closed {
            *x >= self.lo
        } else {
            *x > self.lo
        };
        let below = if self.hi_closed {
            *x <= self.hi
        } else {
            *x < self.hi
        };
        above && below
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    /// Midpoint, or the single point of a degenerate interval.
    pub fn midpoint(&self) -> T {
        (self.lo.clone() + self.hi.clone()) / T::from_ratio(2, 1)
    }
}

impl<T: Scalar> fmt::Display for LambdaInterval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo.to_literal(),
            self.hi.to_literal(),
            if self.hi_closed { ']' } else { ')' },
        )
    }
}

/// Result of inverting f*(λ): exact intervals or a subset of a λ grid.
#[derive(Debug, Clone, PartialEq)]
pub enum LambdaSet<T> {
    Intervals(Vec<LambdaInterval<T>>),
    Points(Vec<T>),
}

impl<T: Scalar> LambdaSet<T> {
    pub fn is_empty(&self) -> bool {
        match self {
            LambdaSet::Intervals(v) => v.iter().all(LambdaInterval::is_empty),
            LambdaSet::Points(v) => v.is_empty(),
        }
    }

    pub fn contains(&self, x: &T) -> bool {
        match self {
            LambdaSet::Intervals(v) => v.iter().any(|i| i.contains(x)),
            LambdaSet::Points(v) => v.iter().any(|p| approx_eq(p, x)),
        }
    }

    /// Union of two sets of the same kind; intervals are merged where they
    /// overlap or touch.
    pub fn union(self, other: Self) -> Self {
        match (self, other) {
            (LambdaSet::Intervals(mut a), LambdaSet::Intervals(b)) => {
                a.extend(b);
                LambdaSet::Intervals(merge_intervals(a))
            }
            (LambdaSet::Points(mut a), LambdaSet::Points(b)) => {
                for p in b {
                    if !a.iter().any(|x| approx_eq(x, &p)) {
                        a.push(p);
                    }
                }
                a.sort_by(|x, y| x.partial_cmp(y).expect("λ values are ordered"));
                LambdaSet::Points(a)
            }
            (a, b) => panic!("cannot union {a:?} with {b:?}: mixed exact and grid sets"),
        }
    }

    pub fn empty_like(&self) -> Self {
        match self {
            LambdaSet::Intervals(_) => LambdaSet::Intervals(Vec::new()),
            LambdaSet::Points(_) => LambdaSet::Points(Vec::new()),
        }
    }
}

impl<T: Scalar> fmt::Display for LambdaSet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        match self {
            LambdaSet::Intervals(v) => {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                f.write_str(&parts.join(" ∪ "))
            }
            LambdaSet::Points(v) => {
                let parts: Vec<String> = v.iter().map(Scalar::format_decimal).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
        }
    }
}

fn merge_intervals<T: Scalar>(mut v: Vec<LambdaInterval<T>>) -> Vec<LambdaInterval<T>> {
    v.retain(|i| !i.is_empty());
    v.sort_by(|a, b| {
        a.lo.partial_cmp(&b.lo)
            .expect("λ values are ordered")
            .then_with(|| b.lo_closed.cmp(&a.lo_closed))
    });
    let mut out: Vec<LambdaInterval<T>> = Vec::new();
    for next in v {
        if let Some(last) = out.last_mut() {
            let joins =
                next.lo < last.hi || (next.lo == last.hi && (last.hi_closed || next.lo_closed));
            if joins {
                if next.hi > last.hi {
                    last.hi = next.hi;
                    last.hi_closed = next.hi_closed;
                } else if next.hi == last.hi {
                    last.hi_closed |= next.hi_closed;
                }
                continue;
            }
        }
        out.push(next);
    }
    out
}

/// λ values at which `strategy` is optimal, either as exact intervals or,
/// when `grid_step` is given, as the matching grid points.
pub fn invert<T: Scalar>(
    matrix: &PayoffMatrix<T>,
    strategy: usize,
    mode: InversionMode,
    grid_step: Option<&T>,
) -> Result<LambdaSet<T>> {
    matrix.check_strategy(strategy)?;
    let lines = criterion_lines(matrix)?;
    if let Some(step) = grid_step {
        let points = lambda_grid(step)?
            .into_iter()
            .filter(|l| {
                let (best, top) = best_of_lines(&lines, l);
                match mode {
                    InversionMode::Selected => best == strategy,
                    InversionMode::Admissible => approx_eq(&lines[strategy].value_at(l), &top),
                }
            })
            .collect();
        return Ok(LambdaSet::Points(points));
    }

    let regions = envelope_regions(&lines);
    let intervals = match mode {
        InversionMode::Selected => regions
            .regions
            .iter()
            .filter(|r| r.strategy == strategy)
            .map(|r| LambdaInterval {
                lo_closed: best_of_lines(&lines, &r.lo).0 == strategy,
                hi_closed: best_of_lines(&lines, &r.hi).0 == strategy,
                lo: r.lo.clone(),
                hi: r.hi.clone(),
            })
            .collect(),
        InversionMode::Admissible => {
            // V − L is convex and piecewise linear with kinks only at knots,
            // so its zero set is the hull of the zero knots.
            let zeros: Vec<T> = regions
                .knots()
                .into_iter()
                .filter(|k| approx_eq(&lines[strategy].value_at(k), &best_of_lines(&lines, k).1))
                .collect();
            match (zeros.first(), zeros.last()) {
                (Some(lo), Some(hi)) => vec![LambdaInterval::closed(lo.clone(), hi.clone())],
                _ => Vec::new(),
            }
        }
    };
    Ok(LambdaSet::Intervals(merge_intervals(intervals)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::rescue_fixture;
    use crate::normalize::{normalize, DEFAULT_STRATEGY_CAP};
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn fixture_matrix() -> PayoffMatrix<Rational> {
        normalize(&rescue_fixture(), DEFAULT_STRATEGY_CAP).unwrap()
    }

    fn matrix(rows: &[&[i64]]) -> PayoffMatrix<Rational> {
        PayoffMatrix::from_rows(
            (0..rows.len()).map(|i| format!("r{i}")).collect(),
            (0..rows[0].len()).map(|j| format!("c{j}")).collect(),
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x, 1)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn region(strategy: usize, lo: Rational, hi: Rational) -> LambdaRegion<Rational> {
        LambdaRegion { strategy, lo, hi }
    }

    #[test]
    fn fixture_regions() {
        let r = strategy_regions(&fixture_matrix()).unwrap();
        assert_eq!(
            r.regions,
            vec![
                region(1, q(0, 1), q(2, 5)),
                region(2, q(2, 5), q(4, 5)),
                region(0, q(4, 5), q(1, 1)),
            ]
        );
        assert_eq!(r.breakpoints(), vec![q(2, 5), q(4, 5)]);
    }

    #[test]
    fn trivial_regions() {
        let single = strategy_regions(&matrix(&[&[1, 5, 2]])).unwrap();
        assert_eq!(single.regions, vec![region(0, q(0, 1), q(1, 1))]);
        let same = strategy_regions(&matrix(&[&[1, 5], &[5, 1], &[1, 5]])).unwrap();
        assert_eq!(same.regions, vec![region(0, q(0, 1), q(1, 1))]);
    }

    #[test]
    fn degenerate_point_regions_are_kept() {
        // 4 − 4λ meets the flat row 2 at 1/2; the flat row has the lower
        // index and wins the point as well as everything to the right.
        let m = matrix(&[&[2, 2], &[0, 4]]);
        let r = strategy_regions(&m).unwrap();
        assert_eq!(
            r.regions,
            vec![region(1, q(0, 1), q(1, 2)), region(0, q(1, 2), q(1, 1))]
        );

        // Three lines through (1/2, 2): index 0 is the shallow middle line,
        // so it is selected only at the crossing point.
        let lines = vec![
            CriterionLine {
                strategy: 0,
                intercept: q(3, 1),
                slope: q(-2, 1),
            },
            CriterionLine {
                strategy: 1,
                intercept: q(6, 1),
                slope: q(-8, 1),
            },
            CriterionLine {
                strategy: 2,
                intercept: q(2, 1),
                slope: q(0, 1),
            },
        ];
        let r = envelope_regions(&lines);
        assert_eq!(
            r.regions,
            vec![
                region(1, q(0, 1), q(1, 2)),
                region(0, q(1, 2), q(1, 2)),
                region(2, q(1, 2), q(1, 1)),
            ]
        );
    }

    #[test]
    fn zero_width_region_at_the_right_end() {
        // Both lines end at 1; the steeper higher-index line leads before that.
        let lines = vec![
            CriterionLine {
                strategy: 0,
                intercept: q(1, 1),
                slope: q(0, 1),
            },
            CriterionLine {
                strategy: 1,
                intercept: q(3, 1),
                slope: q(-2, 1),
            },
        ];
        let r = envelope_regions(&lines);
        assert_eq!(
            r.regions,
            vec![region(1, q(0, 1), q(1, 1)), region(0, q(1, 1), q(1, 1))]
        );
    }

    #[test]
    fn fixture_inversions() {
        let m = fixture_matrix();
        let grid = invert(&m, 2, InversionMode::Selected, Some(&q(1, 10))).unwrap();
        assert_eq!(grid, LambdaSet::Points(vec![q(1, 2), q(3, 5), q(7, 10)]));
        assert_eq!(grid.to_string(), "{0.5, 0.6, 0.7}");

        let exact = invert(&m, 2, InversionMode::Selected, None).unwrap();
        assert_eq!(
            exact,
            LambdaSet::Intervals(vec![LambdaInterval::open(q(2, 5), q(4, 5))])
        );
        assert_eq!(exact.to_string(), "(2/5, 4/5)");

        let f4 = invert(&m, 3, InversionMode::Selected, None).unwrap();
        assert!(f4.is_empty());
        let f4 = invert(&m, 3, InversionMode::Admissible, None).unwrap();
        assert_eq!(
            f4,
            LambdaSet::Intervals(vec![LambdaInterval::closed(q(0, 1), q(2, 5))])
        );

        let f2 = invert(&m, 1, InversionMode::Selected, None).unwrap();
        assert_eq!(f2.to_string(), "[0, 2/5]");
        let f1 = invert(&m, 0, InversionMode::Selected, None).unwrap();
        assert_eq!(f1.to_string(), "[4/5, 1]");
        assert!(invert(&m, 4, InversionMode::Admissible, None)
            .unwrap()
            .is_empty());
        assert!(invert(&m, 8, InversionMode::Selected, None).is_err());
    }

    #[test]
    fn interval_merging() {
        let a = LambdaSet::Intervals(vec![LambdaInterval {
            lo: q(0, 1),
            hi: q(2, 5),
            lo_closed: true,
            hi_closed: false,
        }]);
        let b = LambdaSet::Intervals(vec![LambdaInterval::closed(q(2, 5), q(3, 5))]);
        let c = LambdaSet::Intervals(vec![LambdaInterval::open(q(4, 5), q(1, 1))]);
        let u = a.union(b).union(c);
        assert_eq!(u.to_string(), "[0, 3/5] ∪ (4/5, 1)");
        assert!(u.contains(&q(2, 5)));
        assert!(!u.contains(&q(7, 10)));
        assert!(!u.contains(&q(1, 1)));
    }
}
