//! States on the pasted lattice of a diagram.
//!
//! A state is fixed by its atom values: every value lies in `[0, 1]` and the
//! atoms of every block sum to exactly 1. All computations are exact.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::lattice::{build_oml, AffineForm, ElementId, OmlElement, OmlPoset};
use crate::lp::{Constraint, FeasibleBasis, Optimum};
use crate::mmp::validate;
use crate::{AtomId, Error, MmpDiagram, Rational, Result};

/// Atom values of a (candidate) state.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StateVector {
    values: Vec<Rational>,
}

impl StateVector {
    pub fn new(values: Vec<Rational>) -> Self {
        StateVector { values }
    }

    pub fn uniform(atoms: usize, value: Rational) -> Self {
        StateVector {
            values: vec![value; atoms],
        }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, a: AtomId) -> &Rational {
        &self.values[a.0]
    }
}

pub fn is_state(d: &MmpDiagram, v: &StateVector) -> Result<bool> {
    if v.len() != d.atom_count() {
        return Err(Error::LengthMismatch {
            expected: d.atom_count(),
            got: v.len(),
        });
    }
    let (zero, one) = (Rational::zero(), Rational::one());
    if v.values().iter().any(|x| *x < zero || *x > one) {
        return Ok(false);
    }
    Ok(d.blocks().iter().all(|b| {
        let sum: Rational = b.iter().map(|a| v.get(a)).sum();
        sum == one
    }))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StateClass {
    None,
    ExactlyOne,
    MoreThanOne,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolytopeSummary {
    pub classification: StateClass,
    pub unique_state: Option<StateVector>,
    /// Exact (min, max) of every atom over all states; empty when there are
    /// no states.
    pub atom_ranges: Vec<(Rational, Rational)>,
    /// A state, present unless the classification is `None`.
    pub witness: Option<StateVector>,
    /// A second state differing from `witness`, when there is more than one.
    pub second_witness: Option<StateVector>,
}

/// The state polytope of a diagram as an LP in standard form. Atom `p` is
/// variable `p`; atoms in no block get a slack variable for `x_p <= 1`.
struct StatePolytope {
    atoms: usize,
    vars: usize,
    constraints: Vec<Constraint>,
}

impl StatePolytope {
    fn new(d: &MmpDiagram) -> Self {
        let one = Rational::one();
        let mut constraints: Vec<Constraint> = d
            .blocks()
            .iter()
            .map(|b| Constraint::new(b.iter().map(|a| (a.0, one.clone())).collect(), one.clone()))
            .collect();
        let mut vars = d.atom_count();
        for (a, deg) in d.degrees().into_iter().enumerate() {
            if deg == 0 {
                constraints.push(Constraint::new(
                    vec![(a, one.clone()), (vars, one.clone())],
                    one.clone(),
                ));
                vars += 1;
            }
        }
        StatePolytope {
            atoms: d.atom_count(),
            vars,
            constraints,
        }
    }

    /// Adds `form(x) = target`.
    fn with_equation(&self, form: &AffineForm, target: i64) -> Self {
        let mut constraints = self.constraints.clone();
        constraints.push(Constraint::new(
            form.terms
                .iter()
                .map(|&(a, c)| (a.0, Rational::from_integer(c.into())))
                .collect(),
            Rational::from_integer((target - form.constant).into()),
        ));
        StatePolytope {
            atoms: self.atoms,
            vars: self.vars,
            constraints,
        }
    }

    fn solve(&self) -> Option<FeasibleBasis> {
        FeasibleBasis::new(self.vars, &self.constraints)
    }

    fn state(&self, point: Vec<Rational>) -> StateVector {
        let mut point = point;
        point.truncate(self.atoms);
        StateVector::new(point)
    }
}

fn finite(o: Optimum) -> (Rational, Vec<Rational>) {
    match o {
        Optimum::Finite { value, point } => (value, point),
        Optimum::Unbounded => unreachable!("state polytope is bounded"),
    }
}

fn atom_objective(p: usize) -> [(usize, Rational); 1] {
    [(p, Rational::one())]
}

fn require_mmp(d: &MmpDiagram) -> Result<()> {
    if validate(d).mmp() {
        Ok(())
    } else {
        Err(Error::NotValidated)
    }
}

/// Decides whether a diagram has no state, exactly one, or more, with exact
/// per-atom ranges.
pub fn classify_states(d: &MmpDiagram) -> Result<PolytopeSummary> {
    require_mmp(d)?;
    let polytope = StatePolytope::new(d);
    let Some(basis) = polytope.solve() else {
        return Ok(PolytopeSummary {
            classification: StateClass::None,
            unique_state: None,
            atom_ranges: Vec::new(),
            witness: None,
            second_witness: None,
        });
    };
    let witness = polytope.state(basis.point());
    if is_only_state(d, &basis, &witness) {
        let atom_ranges = witness.values().iter().map(|v| (v.clone(), v.clone())).collect();
        return Ok(PolytopeSummary {
            classification: StateClass::ExactlyOne,
            unique_state: Some(witness.clone()),
            atom_ranges,
            witness: Some(witness),
            second_witness: None,
        });
    }
    let mut atom_ranges = Vec::with_capacity(d.atom_count());
    let mut second = None;
    for p in 0..d.atom_count() {
        let (lo, lo_point) = finite(basis.minimize(&atom_objective(p)));
        let (hi, hi_point) = finite(basis.maximize(&atom_objective(p)));
        if second.is_none() && lo != hi {
            let lo_state = polytope.state(lo_point);
            let hi_state = polytope.state(hi_point);
            second = Some(if lo_state != witness { lo_state } else { hi_state });
        }
        atom_ranges.push((lo, hi));
    }
    Ok(match second {
        None => PolytopeSummary {
            classification: StateClass::ExactlyOne,
            unique_state: Some(witness.clone()),
            atom_ranges,
            witness: Some(witness),
            second_witness: None,
        },
        Some(s) => PolytopeSummary {
            classification: StateClass::MoreThanOne,
            unique_state: None,
            atom_ranges,
            witness: Some(witness),
            second_witness: Some(s),
        },
    })
}

/// Fast uniqueness test. If no state is positive outside the support `S` of
/// `w`, every state solves the block equations on `S` alone; `w` is strictly
/// positive there, so it is the only state exactly when those equations have
/// full column rank.
fn is_only_state(d: &MmpDiagram, basis: &FeasibleBasis, w: &StateVector) -> bool {
    let outside: Vec<(usize, Rational)> = (0..w.len())
        .filter(|&p| w.values()[p].is_zero())
        .map(|p| (p, Rational::one()))
        .collect();
    if !outside.is_empty() && !finite(basis.maximize(&outside)).0.is_zero() {
        return false;
    }
    let support: Vec<usize> = (0..w.len()).filter(|&p| !w.values()[p].is_zero()).collect();
    let mut rows: Vec<Vec<Rational>> = d
        .blocks()
        .iter()
        .map(|b| {
            support
                .iter()
                .map(|&p| {
                    if b.contains(AtomId(p)) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..support.len() {
        let Some(r) = (c..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            return false;
        };
        rows.swap(c, r);
        let pivot_row = rows[c].clone();
        for row in rows.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (v, q) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *v -= &f * q;
                }
            }
        }
    }
    true
}

/// Exact minimum and maximum of one atom over the state polytope.
pub fn atom_range(d: &MmpDiagram, p: AtomId) -> Result<(Rational, Rational)> {
    if p.0 >= d.atom_count() {
        return Err(Error::AtomOutOfRange {
            atom: p.0,
            atom_count: d.atom_count(),
        });
    }
    let basis = StatePolytope::new(d).solve().ok_or(Error::Infeasible)?;
    let (lo, _) = finite(basis.minimize(&atom_objective(p.0)));
    let (hi, _) = finite(basis.maximize(&atom_objective(p.0)));
    Ok((lo, hi))
}

/// All 0-1 states in lexicographic order: exactly one atom set to 1 in every
/// block. Atoms in no block are free.
pub fn enumerate_01_states(d: &MmpDiagram) -> Vec<StateVector> {
    let mut search = ExactCover {
        d,
        incidence: d.incidence(),
        value: vec![None; d.atom_count()],
        covered: vec![false; d.block_count()],
        found: Vec::new(),
    };
    search.solve();
    let mut found = search.found;
    found.sort_unstable();
    found
        .into_iter()
        .map(|bits| {
            StateVector::new(
                bits.into_iter()
                    .map(|b| Rational::from_integer(i64::from(b).into()))
                    .collect(),
            )
        })
        .collect()
}

struct ExactCover<'a> {
    d: &'a MmpDiagram,
    incidence: Vec<Vec<usize>>,
    value: Vec<Option<u8>>,
    covered: Vec<bool>,
    found: Vec<Vec<u8>>,
}

impl ExactCover<'_> {
    fn solve(&mut self) {
        // Uncovered block with the fewest open atoms.
        let mut target: Option<(usize, usize)> = None;
        for (bi, b) in self.d.blocks().iter().enumerate() {
            if self.covered[bi] {
                continue;
            }
            let open = b.iter().filter(|a| self.value[a.0].is_none()).count();
            if target.is_none_or(|(_, n)| open < n) {
                target = Some((bi, open));
            }
        }
        match target {
            Some((_, 0)) => {}
            Some((bi, _)) => {
                let candidates: Vec<AtomId> = self.d.block(bi).iter().filter(|a| self.value[a.0].is_none()).collect();
                for a in candidates {
                    let mut zeroed = Vec::new();
                    let mut newly_covered = Vec::new();
                    self.value[a.0] = Some(1);
                    for &b in &self.incidence[a.0] {
                        self.covered[b] = true;
                        newly_covered.push(b);
                        for other in self.d.block(b).iter() {
                            if self.value[other.0].is_none() {
                                self.value[other.0] = Some(0);
                                zeroed.push(other);
                            }
                        }
                    }
                    self.solve();
                    for z in zeroed {
                        self.value[z.0] = None;
                    }
                    for b in newly_covered {
                        self.covered[b] = false;
                    }
                    self.value[a.0] = None;
                }
            }
            None => self.emit_free(0),
        }
    }

    /// Every block is covered; atoms still open belong to no block.
    fn emit_free(&mut self, from: usize) {
        match (from..self.value.len()).find(|&a| self.value[a].is_none()) {
            None => self
                .found
                .push(self.value.iter().map(|v| v.expect("assigned")).collect()),
            Some(a) => {
                for bit in [0, 1] {
                    self.value[a] = Some(bit);
                    self.emit_free(a + 1);
                }
                self.value[a] = None;
            }
        }
    }
}

/// Why a pair `(x, y)` with `x ≰ y` breaks the strong-set condition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PairCertificate {
    /// The diagram has no state at all (or no 0-1 state), and the empty set
    /// is not strong.
    NoStates,
    /// No state gives `x` the value 1, so the premise holds vacuously.
    PremiseInfeasible,
    /// Every state with `m(x) = 1` also has `m(y) = 1`: the LP minimum of
    /// `m(y)` under `m(x) = 1` is exactly 1.
    MinimumIsOne,
    /// No 0-1 state has `s(x) = 1` and `s(y) = 0`.
    NoSeparatingState,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StrongReport {
    pub admits: bool,
    /// First failing pair in element order (outer `x`, inner `y`).
    pub witness_pair: Option<(OmlElement, OmlElement)>,
    pub certificate: Option<PairCertificate>,
    /// Pairs `x ≰ y` examined before deciding.
    pub pairs_checked: usize,
    pub lp_solves: usize,
}

impl StrongReport {
    fn failed(poset: &OmlPoset, x: ElementId, y: ElementId, why: PairCertificate, pairs: usize, lps: usize) -> Self {
        StrongReport {
            admits: false,
            witness_pair: Some((poset.element(x).clone(), poset.element(y).clone())),
            certificate: Some(why),
            pairs_checked: pairs,
            lp_solves: lps,
        }
    }
}

fn first_incomparable(poset: &OmlPoset) -> Option<(ElementId, ElementId)> {
    poset
        .ids()
        .flat_map(|x| poset.ids().map(move |y| (x, y)))
        .find(|&(x, y)| !poset.leq_id(x, y))
}

/// Decides whether the lattice admits any strong set of states.
///
/// If the set of all states fails the condition for some pair, so does every
/// subset, so only the full set is tested: for each `x ≰ y` there must be a
/// state with `m(x) = 1` and `m(y) < 1`.
pub fn admits_strong_set(d: &MmpDiagram) -> Result<StrongReport> {
    let poset = build_oml(d)?;
    let polytope = StatePolytope::new(d);
    let mut lp_solves = 1;
    if polytope.solve().is_none() {
        let (x, y) = first_incomparable(&poset).expect("at least 0 and 1");
        return Ok(StrongReport::failed(
            &poset,
            x,
            y,
            PairCertificate::NoStates,
            0,
            lp_solves,
        ));
    }
    let one = Rational::one();
    let mut pairs = 0;
    for x in poset.ids() {
        let above: Vec<ElementId> = poset.ids().filter(|&y| !poset.leq_id(x, y)).collect();
        if above.is_empty() {
            continue;
        }
        let face = polytope.with_equation(&poset.measure(x), 1);
        lp_solves += 1;
        let Some(basis) = face.solve() else {
            pairs += 1;
            return Ok(StrongReport::failed(
                &poset,
                x,
                above[0],
                PairCertificate::PremiseInfeasible,
                pairs,
                lp_solves,
            ));
        };
        let mut known = vec![basis.point()];
        for y in above {
            pairs += 1;
            let form = poset.measure(y);
            if known.iter().any(|pt| form.eval(pt) < one) {
                continue;
            }
            let terms: Vec<(usize, Rational)> = form
                .terms
                .iter()
                .map(|&(a, c)| (a.0, Rational::from_integer(c.into())))
                .collect();
            lp_solves += 1;
            let (_, point) = finite(basis.minimize(&terms));
            if form.eval(&point) < one {
                known.push(point);
            } else {
                return Ok(StrongReport::failed(
                    &poset,
                    x,
                    y,
                    PairCertificate::MinimumIsOne,
                    pairs,
                    lp_solves,
                ));
            }
        }
    }
    Ok(StrongReport {
        admits: true,
        witness_pair: None,
        certificate: None,
        pairs_checked: pairs,
        lp_solves,
    })
}

/// Same pair test with the set of all 0-1 states.
pub fn admits_strong_01_set(d: &MmpDiagram) -> Result<StrongReport> {
    let poset = build_oml(d)?;
    let states = enumerate_01_states(d);
    if states.is_empty() {
        let (x, y) = first_incomparable(&poset).expect("at least 0 and 1");
        return Ok(StrongReport::failed(&poset, x, y, PairCertificate::NoStates, 0, 0));
    }
    // ones[e]: bitset of the states giving element e the value 1.
    let words = states.len().div_ceil(64);
    let mut ones = vec![vec![0u64; words]; poset.len()];
    for (si, s) in states.iter().enumerate() {
        for x in poset.ids() {
            if poset.value(s, x).is_one() {
                ones[x.0][si / 64] |= 1 << (si % 64);
            }
        }
    }
    let mut pairs = 0;
    for x in poset.ids() {
        for y in poset.ids() {
            if poset.leq_id(x, y) {
                continue;
            }
            pairs += 1;
            let separated = ones[x.0].iter().zip(&ones[y.0]).any(|(a, b)| a & !b != 0);
            if !separated {
                return Ok(StrongReport::failed(
                    &poset,
                    x,
                    y,
                    PairCertificate::NoSeparatingState,
                    pairs,
                    0,
                ));
            }
        }
    }
    Ok(StrongReport {
        admits: true,
        witness_pair: None,
        certificate: None,
        pairs_checked: pairs,
        lp_solves: 0,
    })
}

/// Literal classically-strong test: some state `m` with
/// `(m(a) = 1 ⇒ m(b) = 1) ⇔ a ≤ b` for all elements.
///
/// Two incomparable elements make this impossible, so only chains can pass.
pub fn admits_classically_strong(d: &MmpDiagram) -> Result<bool> {
    let poset = build_oml(d)?;
    if first_incomparable_both_ways(&poset) {
        return Ok(false);
    }
    let polytope = StatePolytope::new(d);
    let Some(basis) = polytope.solve() else {
        return Ok(false);
    };
    let m = polytope.state(basis.point());
    let values: Vec<Rational> = poset.ids().map(|x| poset.value(&m, x)).collect();
    Ok(poset.ids().all(|a| {
        poset.ids().all(|b| {
            let implication = !values[a.0].is_one() || values[b.0].is_one();
            implication == poset.leq_id(a, b)
        })
    }))
}

fn first_incomparable_both_ways(poset: &OmlPoset) -> bool {
    poset
        .ids()
        .any(|x| poset.ids().any(|y| !poset.leq_id(x, y) && !poset.leq_id(y, x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmp::parse_mmp;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn is_state_checks_sums_and_bounds() {
        let d = parse_mmp("123.").unwrap();
        assert!(is_state(&d, &StateVector::uniform(3, q(1, 3))).unwrap());
        assert!(!is_state(&d, &StateVector::uniform(3, q(1, 2))).unwrap());
        let negative = StateVector::new(vec![q(-1, 2), q(1, 2), q(1, 1)]);
        assert!(!is_state(&d, &negative).unwrap());
        assert_eq!(
            is_state(&d, &StateVector::uniform(2, q(1, 2))),
            Err(Error::LengthMismatch { expected: 3, got: 2 })
        );
    }

    #[test]
    fn single_block_has_many_states() {
        let d = parse_mmp("123.").unwrap();
        let s = classify_states(&d).unwrap();
        assert_eq!(s.classification, StateClass::MoreThanOne);
        assert!(s.atom_ranges.iter().all(|r| *r == (q(0, 1), q(1, 1))));
        let (a, b) = (s.witness.unwrap(), s.second_witness.unwrap());
        assert_ne!(a, b);
        assert!(is_state(&d, &a).unwrap() && is_state(&d, &b).unwrap());
        assert_eq!(atom_range(&d, AtomId(1)).unwrap(), (q(0, 1), q(1, 1)));
    }

    #[test]
    fn zero_one_states_of_a_block() {
        let d = parse_mmp("123.").unwrap();
        let states = enumerate_01_states(&d);
        assert_eq!(states.len(), 3);
        assert_eq!(states[0].values(), &[q(0, 1), q(0, 1), q(1, 1)]);
    }

    #[test]
    fn uncovered_atoms_are_free() {
        let d = MmpDiagram::from_indices(4, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(enumerate_01_states(&d).len(), 6);
        assert_eq!(atom_range(&d, AtomId(3)).unwrap(), (q(0, 1), q(1, 1)));
    }

    #[test]
    fn strong_sets_on_a_block() {
        let d = parse_mmp("123.").unwrap();
        assert!(admits_strong_set(&d).unwrap().admits);
        assert!(admits_strong_01_set(&d).unwrap().admits);
        assert!(!admits_classically_strong(&d).unwrap());
    }

    #[test]
    fn two_element_lattice_is_classically_strong() {
        let d = MmpDiagram::default();
        assert!(admits_classically_strong(&d).unwrap());
    }

    #[test]
    fn not_validated() {
        let d = parse_mmp("12.").unwrap();
        assert_eq!(classify_states(&d), Err(Error::NotValidated));
    }
}
