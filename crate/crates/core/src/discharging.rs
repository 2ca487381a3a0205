//! Charges on the planarized graph and the eight transfer rules.
//!
//! Vertices and faces start with `deg - 4`, which sums to `-8` on a
//! connected plane graph. The rules move exact rational amounts between
//! elements; adjacency in the rules is adjacency in the base graph, and face
//! incidences are counted once per appearance on a boundary walk.
//!
//! [`audit_final_charges`] attaches to every element the local hypotheses
//! its nonnegativity argument relies on and reports which of them fail.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::audit::{Auditor, ConditionId};
use crate::embedding::PlaneGraph;
use crate::error::{Error, Result};
use crate::graph::Vertex;

pub type Charge = Ratio<i64>;

/// `p/q` with `q > 0`, also for integers.
pub fn format_charge(c: Charge) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// An element of the planarized graph. Crossing vertices use ids from
/// `n` upward, like [`PlaneGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Vertex(Vertex),
    Face(usize),
}

impl Element {
    /// `v3`, `X0`, `f7`.
    pub fn label(self, real_count: usize) -> String {
        match self {
            Element::Vertex(v) if v >= real_count => format!("X{}", v - real_count),
            Element::Vertex(v) => format!("v{v}"),
            Element::Face(f) => format!("f{f}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
}

impl Rule {
    pub const ALL: [Rule; 8] = [Rule::R1, Rule::R2, Rule::R3, Rule::R4, Rule::R5, Rule::R6, Rule::R7, Rule::R8];

    pub fn amount(self) -> Charge {
        match self {
            Rule::R1 => Charge::from_integer(1),
            Rule::R2 => Charge::new(3, 2),
            Rule::R3 | Rule::R4 | Rule::R5 => Charge::new(1, 2),
            Rule::R6 => Charge::new(1, 4),
            Rule::R7 => Charge::new(1, 3),
            Rule::R8 => Charge::new(1, 6),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transfer {
    pub rule: Rule,
    pub source: Element,
    pub target: Element,
    pub amount: Charge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeLedger {
    charges: BTreeMap<Element, Charge>,
    transfers: Vec<Transfer>,
}

impl ChargeLedger {
    pub fn charges(&self) -> &BTreeMap<Element, Charge> {
        &self.charges
    }

    pub fn charge(&self, e: Element) -> Option<Charge> {
        self.charges.get(&e).copied()
    }

    pub fn transfers(&self) -> &[Transfer] {
        &self.transfers
    }

    pub fn total(&self) -> Charge {
        self.charges.values().copied().sum()
    }

    /// Overwrites one charge without a matching debit. Meant for building
    /// fixtures; [`conservation_check`] will notice.
    pub fn set_charge(&mut self, e: Element, c: Charge) {
        self.charges.insert(e, c);
    }

    fn transfer(&mut self, rule: Rule, source: Element, target: Element) {
        let amount = rule.amount();
        *self.charges.get_mut(&source).expect("source in ledger") -= amount;
        *self.charges.get_mut(&target).expect("target in ledger") += amount;
        self.transfers.push(Transfer { rule, source, target, amount });
    }

    pub fn rule_firings(&self) -> BTreeMap<Rule, usize> {
        let mut out: BTreeMap<Rule, usize> = Rule::ALL.iter().map(|&r| (r, 0)).collect();
        for t in &self.transfers {
            *out.entry(t.rule).or_default() += 1;
        }
        out
    }
}

fn elements(p: &PlaneGraph) -> impl Iterator<Item = Element> + '_ {
    (0..p.vertex_count()).map(Element::Vertex).chain((0..p.faces().len()).map(Element::Face))
}

/// `deg - 4` on every vertex and face of the planarized graph.
pub fn initial_charges(p: &PlaneGraph) -> Result<ChargeLedger> {
    p.euler_charge_identity()?;
    let mut charges = BTreeMap::new();
    for v in 0..p.vertex_count() {
        charges.insert(Element::Vertex(v), Charge::from_integer(p.degree(v) as i64 - 4));
    }
    for (i, f) in p.faces().iter().enumerate() {
        charges.insert(Element::Face(i), Charge::from_integer(f.degree() as i64 - 4));
    }
    Ok(ChargeLedger { charges, transfers: vec![] })
}

/// Applies R1..R8 once. Every transfer is decided from the structure of `p`
/// alone, so the order of rules does not matter.
pub fn apply_rules(ledger: &ChargeLedger, p: &PlaneGraph) -> Result<ChargeLedger> {
    if !elements(p).eq(ledger.charges.keys().copied()) {
        return Err(Error::LedgerMismatch);
    }
    let g = p.base();
    let deg = |v: Vertex| g.deg(v);
    let mut out = ledger.clone();
    for v in g.vertices() {
        let target = Element::Vertex(v);
        let nbrs: Vec<Vertex> = g.neighbors(v).collect();
        match deg(v) {
            2 => {
                for &u in &nbrs {
                    out.transfer(Rule::R1, Element::Vertex(u), target);
                }
            }
            3 => {
                for &u in &nbrs {
                    // each adjacent 18-vertex pays, not only a unique one
                    if deg(u) == 18 {
                        out.transfer(Rule::R2, Element::Vertex(u), target);
                    } else if deg(u) >= 19 {
                        out.transfer(Rule::R3, Element::Vertex(u), target);
                    }
                }
            }
            4 => {
                let ten = nbrs.iter().filter(|&&u| deg(u) >= 10).count();
                let small = nbrs.iter().filter(|&&u| deg(u) <= 9).count();
                let huge = nbrs.iter().filter(|&&u| deg(u) >= 22).count();
                if ten == 4 {
                    for &u in &nbrs {
                        out.transfer(Rule::R6, Element::Vertex(u), target);
                    }
                } else if small == 1 && huge == 3 {
                    for &u in nbrs.iter().filter(|&&u| deg(u) >= 22) {
                        out.transfer(Rule::R7, Element::Vertex(u), target);
                    }
                }
            }
            5 => {
                for &u in nbrs.iter().filter(|&&u| deg(u) >= 8) {
                    out.transfer(Rule::R8, Element::Vertex(u), target);
                }
            }
            _ => {}
        }
    }
    for (i, f) in p.faces().iter().enumerate() {
        let face = Element::Face(i);
        let real = f.walk.iter().copied().filter(|&x| !p.is_crossing(x));
        match f.degree() {
            3 => {
                for x in real {
                    out.transfer(Rule::R5, Element::Vertex(x), face);
                }
            }
            d if d >= 5 => {
                for x in real.filter(|&x| deg(x) == 3) {
                    out.transfer(Rule::R4, face, Element::Vertex(x));
                }
            }
            _ => {}
        }
    }
    Ok(out)
}

/// True iff both ledgers have the same total and it is `-8`.
pub fn conservation_check(before: &ChargeLedger, after: &ChargeLedger) -> Result<bool> {
    if !before.charges.keys().eq(after.charges.keys()) {
        return Err(Error::LedgerMismatch);
    }
    let minus_eight = Charge::from_integer(-8);
    Ok(before.total() == after.total() && after.total() == minus_eight)
}

/// A local hypothesis behind an element's nonnegativity argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Hypothesis {
    Condition(ConditionId),
    /// No two consecutive boundary positions of a 5+-face are real 3-vertices.
    NoConsecutiveThreeVertices,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::Condition(c) => write!(f, "{c}"),
            Hypothesis::NoConsecutiveThreeVertices => f.write_str("no_consecutive_3_vertices"),
        }
    }
}

impl Serialize for Hypothesis {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Hypotheses attached to a real vertex by its degree class.
pub fn vertex_hypotheses(p: &PlaneGraph, v: Vertex) -> Vec<ConditionId> {
    use ConditionId::*;
    if p.is_crossing(v) {
        return vec![];
    }
    let g = p.base();
    let l = g.deg(v);
    let has_two = g.neighbors(v).any(|u| g.deg(u) == 2);
    match l {
        0 | 1 => vec![LDelta2],
        2 => vec![C1, Claim1],
        3 => vec![C2, Claim2],
        4 => vec![C5, Claim2, C1],
        5 => vec![C6, Claim2, C1],
        6..=9 => vec![Claim2, C1],
        _ if has_two => vec![C7SeventeenNeighbors, Claim2],
        18 => vec![C3, Claim2],
        19..=21 => vec![C4, Claim2],
        _ => vec![Claim2],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementAudit {
    pub element: String,
    #[serde(serialize_with = "ser_charge")]
    pub final_charge: Charge,
    pub violated: Vec<Hypothesis>,
}

fn ser_charge<S: Serializer>(c: &Charge, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_charge(*c))
}

/// Final charge and failing hypotheses of every element.
pub fn audit_elements(l: &ChargeLedger, p: &PlaneGraph, kappa: usize) -> Result<Vec<ElementAudit>> {
    let g = p.base();
    let auditor = Auditor::new(g, Some(p), kappa)?;
    let n = p.real_count();
    let mut out = Vec::new();
    for (&e, &c) in &l.charges {
        let violated = match e {
            Element::Vertex(v) => {
                let mut bad = Vec::new();
                for id in vertex_hypotheses(p, v) {
                    if auditor.violated_at(id, v)? {
                        bad.push(Hypothesis::Condition(id));
                    }
                }
                bad
            }
            Element::Face(i) => {
                let walk = &p.faces().get(i).ok_or(Error::LedgerMismatch)?.walk;
                let three = |x: Vertex| x < n && g.deg(x) == 3;
                let k = walk.len();
                let consecutive = k >= 5 && (0..k).any(|j| three(walk[j]) && three(walk[(j + 1) % k]));
                if consecutive {
                    vec![Hypothesis::NoConsecutiveThreeVertices]
                } else {
                    vec![]
                }
            }
        };
        out.push(ElementAudit { element: e.label(n), final_charge: c, violated });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DischargeReport {
    #[serde(serialize_with = "ser_charge")]
    pub total: Charge,
    pub conserved: bool,
    pub negative_elements: Vec<ElementAudit>,
    /// Elements (of any sign) with at least one failing hypothesis.
    pub hypothesis_violating: usize,
    /// Negative elements whose hypotheses all hold; always empty when the
    /// case analysis is sound.
    pub unexplained: Vec<String>,
    pub rule_firings: BTreeMap<Rule, usize>,
}

impl DischargeReport {
    pub fn is_ok(&self) -> bool {
        self.conserved && self.unexplained.is_empty()
    }
}

/// Audits a ledger after [`apply_rules`]. `kappa` sets the condition
/// thresholds; the case analysis is written for `kappa = max degree + 16`.
pub fn audit_final_charges(l: &ChargeLedger, p: &PlaneGraph, kappa: usize) -> Result<DischargeReport> {
    let fresh = initial_charges(p)?;
    let conserved = conservation_check(&fresh, l)?;
    let audits = audit_elements(l, p, kappa)?;
    let hypothesis_violating = audits.iter().filter(|a| !a.violated.is_empty()).count();
    let negative_elements: Vec<ElementAudit> = audits.into_iter().filter(|a| a.final_charge.is_negative()).collect();
    let unexplained = negative_elements.iter().filter(|a| a.violated.is_empty()).map(|a| a.element.clone()).collect();
    Ok(DischargeReport {
        total: l.total(),
        conserved,
        negative_elements,
        hypothesis_violating,
        unexplained,
        rule_firings: l.rule_firings(),
    })
}

/// Initial charges, rules and audit in one call.
pub fn discharge(p: &PlaneGraph, kappa: usize) -> Result<(ChargeLedger, DischargeReport)> {
    let ledger = apply_rules(&initial_charges(p)?, p)?;
    let report = audit_final_charges(&ledger, p, kappa)?;
    Ok((ledger, report))
}

impl fmt::Display for DischargeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "total {}", format_charge(self.total))?;
        writeln!(f, "conserved {}", self.conserved)?;
        let firings: Vec<String> = self.rule_firings.iter().map(|(r, n)| format!("{r}={n}")).collect();
        writeln!(f, "rules {}", firings.join(" "))?;
        writeln!(f, "hypothesis_violating {}", self.hypothesis_violating)?;
        for a in &self.negative_elements {
            let v: Vec<String> = a.violated.iter().map(|h| h.to_string()).collect();
            writeln!(f, "negative {} {} [{}]", a.element, format_charge(a.final_charge), v.join(","))?;
        }
        if !self.unexplained.is_empty() {
            writeln!(f, "unexplained {}", self.unexplained.join(" "))?;
        }
        Ok(())
    }
}

/// Sum of charges leaving minus charges entering `e` in the transfer log.
pub fn net_outflow(l: &ChargeLedger, e: Element) -> Charge {
    l.transfers.iter().fold(Charge::zero(), |acc, t| {
        let out = if t.source == e { t.amount } else { Charge::zero() };
        let inc = if t.target == e { t.amount } else { Charge::zero() };
        acc + out - inc
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::OnePlaneDrawing;
    use crate::graph::{named, Graph};

    fn r(p: i64, q: i64) -> Charge {
        Charge::new(p, q)
    }

    fn square() -> PlaneGraph {
        let g = named::cycle(4);
        OnePlaneDrawing::from_straight_line(g, vec![], &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
            .unwrap()
            .planarize()
            .unwrap()
    }

    #[test]
    fn c4_initial_total() {
        let p = square();
        let l = initial_charges(&p).unwrap();
        assert_eq!(l.charge(Element::Vertex(0)), Some(r(-2, 1)));
        assert_eq!(l.total(), r(-8, 1));
        assert_eq!(format_charge(l.total()), "-8/1");
    }

    #[test]
    fn c4_rules() {
        let p = square();
        let before = initial_charges(&p).unwrap();
        let after = apply_rules(&before, &p).unwrap();
        // every 2-vertex gets 1 from each neighbor and pays 1 to each
        assert_eq!(after.rule_firings()[&Rule::R1], 8);
        for v in 0..4 {
            assert_eq!(after.charge(Element::Vertex(v)), Some(r(-2, 1)));
        }
        assert!(conservation_check(&before, &after).unwrap());
        assert!(conservation_check(&before, &before).unwrap());
        let mut forged = after.clone();
        forged.set_charge(Element::Vertex(0), r(-1, 1));
        assert!(!conservation_check(&before, &forged).unwrap());
    }

    #[test]
    fn mismatched_ledgers() {
        let p = square();
        let a = initial_charges(&p).unwrap();
        let mut b = a.clone();
        b.set_charge(Element::Face(99), r(0, 1));
        assert_eq!(conservation_check(&a, &b).unwrap_err(), Error::LedgerMismatch);
        assert_eq!(apply_rules(&b, &p).unwrap_err(), Error::LedgerMismatch);
    }

    #[test]
    fn disconnected_refused() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let d =
            OnePlaneDrawing::from_straight_line(g, vec![], &[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)]).unwrap();
        let p = d.planarize().unwrap();
        assert!(matches!(initial_charges(&p), Err(Error::Disconnected { components: 2 })));
    }

    #[test]
    fn c4_report_lists_c1() {
        let p = square();
        let (_, report) = discharge(&p, 18).unwrap();
        assert!(report.is_ok());
        assert_eq!(report.negative_elements.len(), 4);
        for a in &report.negative_elements {
            assert_eq!(a.violated, vec![Hypothesis::Condition(ConditionId::C1)]);
        }
        assert_eq!(report.total, r(-8, 1));
    }

    #[test]
    fn crossing_vertex_stays_zero() {
        // two crossing diagonals of a square: the crossing has degree 4
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap();
        let e02 = g.edge_id(0, 2).unwrap();
        let e13 = g.edge_id(1, 3).unwrap();
        let d =
            OnePlaneDrawing::from_straight_line(g, vec![(e02, e13)], &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
                .unwrap();
        let p = d.planarize().unwrap();
        let (l, _) = discharge(&p, 19).unwrap();
        assert_eq!(l.charge(Element::Vertex(4)), Some(r(0, 1)));
        assert_eq!(net_outflow(&l, Element::Vertex(4)), r(0, 1));
        // the four inner 3-faces each get 1/2 from their two real corners
        for (i, f) in p.faces().iter().enumerate() {
            if f.degree() == 3 {
                assert_eq!(l.charge(Element::Face(i)), Some(r(0, 1)));
            }
        }
        assert_eq!(l.total(), r(-8, 1));
    }

    /// A 4-vertex at the origin whose neighbors are padded with outward
    /// leaves to the given degrees. The drawing is a tree, so one face.
    fn spider(degrees: [usize; 4]) -> PlaneGraph {
        let dirs = [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)];
        let mut coords = vec![(0.0, 0.0)];
        let mut edges = vec![];
        for (i, &(dx, dy)) in dirs.iter().enumerate() {
            coords.push((4.0 * dx, 4.0 * dy));
            edges.push((0, i + 1));
        }
        for (i, &d) in degrees.iter().enumerate() {
            let (dx, dy) = dirs[i];
            for j in 0..d - 1 {
                let t = j as f64 - (d - 2) as f64 / 2.0;
                coords.push((5.0 * dx - 0.1 * t * dy, 5.0 * dy + 0.1 * t * dx));
                edges.push((i + 1, coords.len() - 1));
            }
        }
        let g = Graph::new(coords.len(), edges).unwrap();
        OnePlaneDrawing::from_straight_line(g, vec![], &coords).unwrap().planarize().unwrap()
    }

    #[test]
    fn r6_four_heavy_neighbors() {
        let p = spider([10, 10, 10, 10]);
        let l = apply_rules(&initial_charges(&p).unwrap(), &p).unwrap();
        assert_eq!(l.rule_firings()[&Rule::R6], 4);
        assert_eq!(l.charge(Element::Vertex(0)), Some(r(1, 1)));
    }

    #[test]
    fn r6_needs_all_four() {
        let p = spider([10, 10, 10, 9]);
        let l = apply_rules(&initial_charges(&p).unwrap(), &p).unwrap();
        assert_eq!(l.rule_firings()[&Rule::R6], 0);
    }

    #[test]
    fn r7_one_light_three_huge() {
        let p = spider([5, 22, 22, 22]);
        let l = apply_rules(&initial_charges(&p).unwrap(), &p).unwrap();
        assert_eq!(l.rule_firings()[&Rule::R7], 3);
        assert_eq!(l.rule_firings()[&Rule::R6], 0);
        assert_eq!(l.charge(Element::Vertex(0)), Some(r(1, 1)));
        // 22-vertex: 18 initial, minus 1/3, minus 21 leaves get nothing.
        assert_eq!(l.charge(Element::Vertex(2)), Some(r(53, 3)));
    }
}
