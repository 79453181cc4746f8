//! Embedded resolution of plane-curve germs by iterated point blowups.
//!
//! Input: a squarefree `f` in `Q[x, y]` with `f(0,0) = 0`. The resolver
//! blows up points until the total transform is a simple normal crossing
//! divisor: the strict transform is smooth, meets each exceptional curve
//! transversally, and no three components share a point. The output
//! records, for every exceptional curve, the multiplicities
//!
//! - `N`: of the pulled-back function,
//! - `nu`: one plus the discrepancy (`nu - 1` is the multiplicity of the
//!   pulled-back volume form),
//! - `M`: the multiplicity in the pullback of the first exceptional line,
//!
//! which obey the blowup recursion `N = mult + sum N_i`,
//! `nu = 2 + sum (nu_i - 1)`, `M = sum M_i` (seeded with `M = 1` at the
//! first blowup), the sums running over the components through the center.
//!
//! Every blowup center must have rational coordinates: centers are found
//! by extracting rational roots of one-variable restrictions, and a
//! multiple irrational root aborts with [`ResolveError::IrrationalCenter`].
//! Simple irrational intersection points are already transverse and never
//! need a center there.

use num_traits::Zero;
use thiserror::Error;

use crate::polynomial::{is_squarefree, BiPoly, RatPoly};
use crate::resolution::{DualGraph, ResolutionData};

/// Blowup-depth cap; converts a runaway recursion into an error.
pub const DEFAULT_MAX_DEPTH: u32 = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResolveError {
    #[error("the germ is a unit: f(0,0) != 0")]
    UnitGerm,
    #[error("the polynomial is not squarefree (or is zero)")]
    NotSquarefree,
    #[error("a blowup center has non-rational coordinates (multiple root of {restriction})")]
    IrrationalCenter { restriction: String },
    #[error("resolution did not terminate within {max_depth} blowups on one chain")]
    DepthExceeded { max_depth: u32 },
}

/// Resolver output: the flat data plus the dual graph it came from.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub data: ResolutionData,
    pub graph: DualGraph,
}

/// Which coordinate axis an exceptional component occupies in the current
/// chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Axis {
    X,
    Y,
}

/// A point of the current model, placed at the origin of a local chart.
#[derive(Clone, Debug)]
struct ChartPoint {
    /// Local equation of the strict transform.
    g: BiPoly,
    /// Exceptional components through the point, with their local axes
    /// (at most two, on distinct axes).
    through: Vec<(usize, Axis)>,
    /// Blowups performed above the original origin.
    depth: u32,
}

#[derive(Clone, Debug)]
struct ExcComponent {
    n: u64,
    nu: u64,
    m: u64,
}

struct Resolver {
    registry: Vec<ExcComponent>,
    edges: Vec<(usize, usize)>,
    /// Exceptional index where each strict branch is attached, in
    /// discovery order.
    arrows: Vec<usize>,
    max_depth: u32,
}

impl Resolver {
    /// Decides what happens at a point: nothing, a finished incidence, or
    /// a blowup.
    fn examine(&mut self, pt: ChartPoint) -> Result<(), ResolveError> {
        let strict_through = pt.g.constant_term().is_zero();
        if !strict_through {
            if let [(a, _), (b, _)] = pt.through[..] {
                self.edges.push((a, b));
            }
            return Ok(());
        }
        let mult = pt
            .g
            .multiplicity()
            .expect("strict transform is never the zero polynomial");
        let needs_blowup = match pt.through[..] {
            [_, _, ..] => true, // three components (strict + two exceptional)
            _ if mult >= 2 => true,
            [(_, axis)] => {
                // Tangency to the exceptional axis forces more blowups.
                let restriction = match axis {
                    Axis::X => pt.g.restrict_x0(),
                    Axis::Y => pt.g.restrict_y0(),
                };
                order_at_zero(&restriction) >= 2
            }
            [] => true, // the original origin: always factor through one blowup
        };
        if needs_blowup {
            self.blowup(pt)
        } else {
            // Smooth branch crossing exactly one exceptional transversally.
            self.arrows.push(pt.through[0].0);
            Ok(())
        }
    }

    fn blowup(&mut self, pt: ChartPoint) -> Result<(), ResolveError> {
        if pt.depth >= self.max_depth {
            return Err(ResolveError::DepthExceeded {
                max_depth: self.max_depth,
            });
        }
        let mult = u64::from(pt.g.multiplicity().expect("center lies on the strict transform"));
        let new = ExcComponent {
            n: mult + pt.through.iter().map(|&(i, _)| self.registry[i].n).sum::<u64>(),
            nu: 2 + pt
                .through
                .iter()
                .map(|&(i, _)| self.registry[i].nu - 1)
                .sum::<u64>(),
            m: if pt.depth == 0 {
                1
            } else {
                pt.through.iter().map(|&(i, _)| self.registry[i].m).sum()
            },
        };
        let e_new = self.registry.len();
        self.registry.push(new);
        let depth = pt.depth + 1;

        // Chart (x, y) -> (x, x*y): covers the finite part of the new
        // curve; the old axis-Y component survives as {y = 0} through the
        // chart origin.
        let m32 = mult as u32;
        let g1 = pt.g.blowup_chart_x().divide_x_power(m32);
        let mut through_origin1 = vec![(e_new, Axis::X)];
        if let Some(&(i, _)) = pt.through.iter().find(|&&(_, a)| a == Axis::Y) {
            through_origin1.push((i, Axis::Y));
        }
        self.examine(ChartPoint {
            g: g1.clone(),
            through: through_origin1,
            depth,
        })?;

        // Remaining finite points: roots of the restriction to the new
        // curve. Simple roots are transverse smooth crossings; multiple
        // roots become centers and must be rational.
        let h = g1.restrict_x0();
        debug_assert!(!h.is_zero(), "strict transform contains no exceptional line");
        if !h.is_constant() {
            let (roots, leftover) = h.rational_roots();
            for (c, mu) in &roots {
                if c.is_zero() {
                    continue; // the chart origin, already examined
                }
                if *mu == 1 {
                    self.arrows.push(e_new);
                } else {
                    self.examine(ChartPoint {
                        g: g1.translate_y(c),
                        through: vec![(e_new, Axis::X)],
                        depth,
                    })?;
                }
            }
            if let Some(d) = leftover.degree() {
                if d >= 1 {
                    if !leftover.gcd(&leftover.derivative()).is_constant() {
                        return Err(ResolveError::IrrationalCenter {
                            restriction: leftover.display_with("y"),
                        });
                    }
                    // d simple points with irrational coordinates: each is
                    // a transverse smooth crossing of one branch.
                    for _ in 0..d {
                        self.arrows.push(e_new);
                    }
                }
            }
        }

        // Chart (x, y) -> (x*y, y): only its origin (the point at infinity
        // of the new curve) is new; the old axis-X component survives as
        // {x = 0}.
        let g2 = pt.g.blowup_chart_y().divide_y_power(m32);
        let mut through_origin2 = vec![(e_new, Axis::Y)];
        if let Some(&(i, _)) = pt.through.iter().find(|&&(_, a)| a == Axis::X) {
            through_origin2.push((i, Axis::X));
        }
        self.examine(ChartPoint {
            g: g2,
            through: through_origin2,
            depth,
        })
    }
}

fn order_at_zero(p: &RatPoly) -> u32 {
    if p.is_zero() {
        return u32::MAX;
    }
    let mut k = 0;
    while p.coeff(k as usize).is_zero() {
        k += 1;
    }
    k
}

fn vertex_id(index: usize) -> String {
    format!("E{}", index + 1)
}

fn strict_id(index: usize) -> String {
    format!("C{}", index + 1)
}

/// Resolves a plane-curve germ, producing full resolution data and its
/// dual graph. Component ids are assigned in blowup order along a
/// depth-first traversal, so identical inputs give identical outputs.
pub fn resolve_germ(f: &BiPoly, max_depth: u32) -> Result<Resolved, ResolveError> {
    if f.is_zero() || !is_squarefree(f) {
        return Err(ResolveError::NotSquarefree);
    }
    if !f.constant_term().is_zero() {
        return Err(ResolveError::UnitGerm);
    }
    let mut resolver = Resolver {
        registry: Vec::new(),
        edges: Vec::new(),
        arrows: Vec::new(),
        max_depth,
    };
    resolver.examine(ChartPoint {
        g: f.clone(),
        through: Vec::new(),
        depth: 0,
    })?;

    let mut graph = DualGraph::default();
    for (i, e) in resolver.registry.iter().enumerate() {
        graph.add_vertex(vertex_id(i), e.n, e.nu, Some(e.m));
    }
    for &(a, b) in &resolver.edges {
        graph.add_edge(vertex_id(a), vertex_id(b), 1);
    }
    for (k, &v) in resolver.arrows.iter().enumerate() {
        graph.add_arrow(vertex_id(v), strict_id(k));
    }
    let data = graph
        .to_resolution()
        .expect("resolver output is a well-formed dual graph");
    debug_assert!(data.validate().is_valid());
    Ok(Resolved { data, graph })
}
