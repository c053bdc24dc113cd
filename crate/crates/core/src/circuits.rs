//! Gate-level decomposition of `W_theta` and a line-oriented netlist format.
//!
//! Gate matrices follow OpenQASM: `s = diag(1, i)`, `rz(t) = exp(-i t Z / 2)`.
//! Qubit 0 is the leftmost tensor factor.

use std::fmt::Write as _;

use crate::error::{FerroError, Result};
use crate::operator::{DenseOperator, C64, ONE};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    X(usize),
    H(usize),
    S(usize),
    Sdg(usize),
    Rz(usize, f64),
    Cz(usize, usize),
    Swap(usize, usize),
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::X(_) => "x",
            Gate::H(_) => "h",
            Gate::S(_) => "s",
            Gate::Sdg(_) => "sdg",
            Gate::Rz(..) => "rz",
            Gate::Cz(..) => "cz",
            Gate::Swap(..) => "swap",
        }
    }

    pub fn targets(&self) -> Vec<usize> {
        match *self {
            Gate::X(q) | Gate::H(q) | Gate::S(q) | Gate::Sdg(q) | Gate::Rz(q, _) => vec![q],
            Gate::Cz(a, b) | Gate::Swap(a, b) => vec![a, b],
        }
    }

    pub fn param(&self) -> Option<f64> {
        match *self {
            Gate::Rz(_, t) => Some(t),
            _ => None,
        }
    }

    fn validate(&self, qubits: usize) -> Result<()> {
        let t = self.targets();
        if let Some(&q) = t.iter().find(|&&q| q >= qubits) {
            return Err(FerroError::Malformed(format!(
                "{} target {q} outside 0..{qubits}",
                self.name()
            )));
        }
        if t.len() == 2 && t[0] == t[1] {
            return Err(FerroError::Malformed(format!(
                "{} on repeated qubit {}",
                self.name(),
                t[0]
            )));
        }
        if let Some(p) = self.param() {
            if !p.is_finite() {
                return Err(FerroError::Malformed(format!("non-finite angle {p}")));
            }
        }
        Ok(())
    }
}

/// Ordered gate sequence; the first gate acts first.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GateList {
    qubits: usize,
    gates: Vec<Gate>,
}

impl GateList {
    pub fn new(qubits: usize) -> Self {
        Self {
            qubits,
            gates: Vec::new(),
        }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    fn push_unchecked(&mut self, gate: Gate) {
        debug_assert!(gate.validate(self.qubits).is_ok());
        self.gates.push(gate);
    }

    fn extend_reversed(&mut self, gates: &[Gate]) {
        self.gates.extend(gates.iter().rev().copied());
    }

    pub fn count(&self, name: &str) -> usize {
        self.gates.iter().filter(|g| g.name() == name).count()
    }
}

#[derive(Clone, Copy)]
enum Axis {
    X,
    Y,
}

/// `exp(-i phi/2 P_a P_b)` with `P in {X, Y}` via basis change and CX-RZ-CX,
/// each CX written as `H CZ H` on the target.
fn pauli_pair_rotation(list: &mut GateList, a: usize, pa: Axis, b: usize, pb: Axis, phi: f64) {
    let pre = |list: &mut GateList, q: usize, p: Axis| match p {
        Axis::X => list.push_unchecked(Gate::H(q)),
        Axis::Y => {
            list.push_unchecked(Gate::Sdg(q));
            list.push_unchecked(Gate::H(q));
        }
    };
    let post = |list: &mut GateList, q: usize, p: Axis| match p {
        Axis::X => list.push_unchecked(Gate::H(q)),
        Axis::Y => {
            list.push_unchecked(Gate::H(q));
            list.push_unchecked(Gate::S(q));
        }
    };
    pre(list, a, pa);
    pre(list, b, pb);
    for g in [
        Gate::H(b),
        Gate::Cz(a, b),
        Gate::H(b),
        Gate::Rz(b, phi),
        Gate::H(b),
        Gate::Cz(a, b),
        Gate::H(b),
    ] {
        list.push_unchecked(g);
    }
    post(list, a, pa);
    post(list, b, pb);
}

/// Two-mode beam splitter on adjacent lines `(a, a + 1)`:
/// `exp[i theta/2 (X_a Y_{a+1} - Y_a X_{a+1})]`.
pub fn rotate_gadget(list: &mut GateList, a: usize, theta: f64) {
    pauli_pair_rotation(list, a, Axis::X, a + 1, Axis::Y, -theta);
    pauli_pair_rotation(list, a, Axis::Y, a + 1, Axis::X, theta);
}

/// Fermionic swap of adjacent modes: `SWAP . CZ`.
fn fswap(a: usize) -> [Gate; 2] {
    [Gate::Cz(a, a + 1), Gate::Swap(a, a + 1)]
}

/// Exchanges modes `top < bottom` exactly using `2(bottom - top) - 1`
/// fermionic swaps: `bottom` moves up to `top`, then the displaced `top`
/// moves down to `bottom`.
pub fn swap_gadget(qubits: usize, top: usize, bottom: usize) -> Result<GateList> {
    if top >= bottom || bottom >= qubits {
        return Err(FerroError::Malformed(format!(
            "swap gadget lines ({top}, {bottom}) invalid for {qubits} qubits"
        )));
    }
    let mut list = GateList::new(qubits);
    for p in (top..bottom).rev() {
        for g in fswap(p) {
            list.push_unchecked(g);
        }
    }
    for p in top + 1..bottom {
        for g in fswap(p) {
            list.push_unchecked(g);
        }
    }
    Ok(list)
}

/// Netlist for `W_theta` on `n + n` modes: for each mode `a`, a swap gadget
/// brings the partner mode `n + a` next to `a`, the rotate gadget acts on
/// `(a, a + 1)`, and the swap gadget is undone.
pub fn decompose_conv_unitary(theta: f64, n: usize) -> Result<GateList> {
    if n == 0 {
        return Err(FerroError::Malformed(
            "mode count must be at least 1".into(),
        ));
    }
    let q = 2 * n;
    let mut list = GateList::new(q);
    for a in 0..n {
        let partner = n + a;
        let gadget = if partner > a + 1 {
            Some(swap_gadget(q, a + 1, partner)?)
        } else {
            None
        };
        if let Some(g) = &gadget {
            list.gates.extend_from_slice(g.gates());
        }
        rotate_gadget(&mut list, a, theta);
        if let Some(g) = &gadget {
            list.extend_reversed(g.gates());
        }
    }
    Ok(list)
}

fn apply_single(m: &mut nalgebra::DMatrix<C64>, qubits: usize, q: usize, g: [[C64; 2]; 2]) {
    let bit = 1usize << (qubits - 1 - q);
    let d = m.nrows();
    for c in 0..d {
        for r in 0..d {
            if r & bit != 0 {
                continue;
            }
            let (u, v) = (m[(r, c)], m[(r | bit, c)]);
            m[(r, c)] = g[0][0] * u + g[0][1] * v;
            m[(r | bit, c)] = g[1][0] * u + g[1][1] * v;
        }
    }
}

/// Ordered product of the gate matrices (last gate leftmost).
pub fn gate_list_to_unitary(list: &GateList) -> Result<DenseOperator> {
    let q = list.qubits;
    let mut m = DenseOperator::identity(q).into_matrix();
    let zero = C64::new(0.0, 0.0);
    let h = C64::from(std::f64::consts::FRAC_1_SQRT_2);
    for gate in &list.gates {
        gate.validate(q)?;
        match *gate {
            Gate::X(t) => apply_single(&mut m, q, t, [[zero, ONE], [ONE, zero]]),
            Gate::H(t) => apply_single(&mut m, q, t, [[h, h], [h, -h]]),
            Gate::S(t) => apply_single(&mut m, q, t, [[ONE, zero], [zero, C64::new(0.0, 1.0)]]),
            Gate::Sdg(t) => apply_single(&mut m, q, t, [[ONE, zero], [zero, C64::new(0.0, -1.0)]]),
            Gate::Rz(t, phi) => apply_single(
                &mut m,
                q,
                t,
                [
                    [C64::from_polar(1.0, -phi / 2.0), zero],
                    [zero, C64::from_polar(1.0, phi / 2.0)],
                ],
            ),
            Gate::Cz(a, b) => {
                let mask = 1usize << (q - 1 - a) | 1usize << (q - 1 - b);
                for r in 0..m.nrows() {
                    if r & mask == mask {
                        m.row_mut(r).neg_mut();
                    }
                }
            }
            Gate::Swap(a, b) => {
                let (ba, bb) = (1usize << (q - 1 - a), 1usize << (q - 1 - b));
                for r in 0..m.nrows() {
                    if r & ba != 0 && r & bb == 0 {
                        m.swap_rows(r, r ^ ba ^ bb);
                    }
                }
            }
        }
    }
    DenseOperator::new(q, m)
}

/// `min_phi ||A - e^{i phi} B||_2` (normalized).
pub fn phase_invariant_distance(a: &DenseOperator, b: &DenseOperator) -> Result<f64> {
    // The minimizing phase is arg Tr(B^dag A).
    let overlap = b.trace_inner(a)?;
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        ONE
    };
    a.l2_distance(&b.scale(phase))
}

/// Header `qubits <N>`, then `<gate> <targets...> [angle]` per line.
pub fn emit_netlist(list: &GateList) -> String {
    let mut out = format!("qubits {}\n", list.qubits);
    for g in &list.gates {
        out.push_str(g.name());
        for t in g.targets() {
            let _ = write!(out, " {t}");
        }
        if let Some(p) = g.param() {
            let _ = write!(out, " {p}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_netlist(text: &str) -> Result<GateList> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (_, header) = lines
        .next()
        .ok_or_else(|| FerroError::Parse("empty netlist".into()))?;
    let qubits = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["qubits", n] => n
            .parse::<usize>()
            .map_err(|e| FerroError::Parse(format!("line 1: qubit count: {e}")))?,
        _ => {
            return Err(FerroError::Parse(format!(
                "line 1: expected `qubits <N>`, found {header:?}"
            )))
        }
    };
    let mut list = GateList::new(qubits);
    for (no, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let idx = |s: &str| {
            s.parse::<usize>()
                .map_err(|e| FerroError::Parse(format!("line {no}: qubit index {s:?}: {e}")))
        };
        let gate = match fields.as_slice() {
            ["x", t] => Gate::X(idx(t)?),
            ["h", t] => Gate::H(idx(t)?),
            ["s", t] => Gate::S(idx(t)?),
            ["sdg", t] => Gate::Sdg(idx(t)?),
            ["rz", t, p] => Gate::Rz(
                idx(t)?,
                p.parse::<f64>()
                    .map_err(|e| FerroError::Parse(format!("line {no}: angle {p:?}: {e}")))?,
            ),
            ["cz", a, b] => Gate::Cz(idx(a)?, idx(b)?),
            ["swap", a, b] => Gate::Swap(idx(a)?, idx(b)?),
            _ => {
                return Err(FerroError::Parse(format!(
                    "line {no}: unrecognized instruction {line:?}"
                )))
            }
        };
        list.push(gate)
            .map_err(|e| FerroError::Parse(format!("line {no}: {e}")))?;
    }
    Ok(list)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford;
    use crate::convolution::conv_unitary;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

    #[test]
    fn empty_list_is_identity() {
        let u = gate_list_to_unitary(&GateList::new(3)).unwrap();
        assert!(u.l2_distance(&DenseOperator::identity(3)).unwrap() < 1e-15);
    }

    #[test]
    fn swap_matrix() {
        let mut l = GateList::new(2);
        l.push(Gate::Swap(0, 1)).unwrap();
        let u = gate_list_to_unitary(&l).unwrap();
        assert!(u.l2_distance(&crate::testing::swap()).unwrap() < 1e-15);
        assert_eq!(emit_netlist(&l), "qubits 2\nswap 0 1\n");
    }

    #[test]
    fn invalid_gates_are_rejected() {
        let mut l = GateList::new(2);
        assert!(l.push(Gate::Cz(0, 0)).is_err());
        assert!(l.push(Gate::H(2)).is_err());
        assert!(l.push(Gate::Rz(0, f64::NAN)).is_err());
        assert!(parse_netlist("qubits 2\nrz 0\n").is_err());
        assert!(parse_netlist("qubits 2\ncx 0 1\n").is_err());
    }

    #[test]
    fn single_pair_is_rotate_gadget_only() {
        let l = decompose_conv_unitary(FRAC_PI_4, 1).unwrap();
        assert_eq!(l.count("swap"), 0);
        let d = phase_invariant_distance(
            &gate_list_to_unitary(&l).unwrap(),
            &conv_unitary(FRAC_PI_4, 1),
        )
        .unwrap();
        assert!(d < 1e-12, "{d}");
    }

    #[test]
    fn decompositions_recompose() {
        for n in 1..=3 {
            for theta in [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3] {
                let l = decompose_conv_unitary(theta, n).unwrap();
                let u = gate_list_to_unitary(&l).unwrap();
                let d = phase_invariant_distance(&u, &conv_unitary(theta, n)).unwrap();
                assert!(d < 1e-9, "n={n} theta={theta} d={d}");
            }
        }
        let l = decompose_conv_unitary(FRAC_PI_4, 4).unwrap();
        assert!(l.count("swap") > 0 && l.count("cz") > 0);
    }

    #[test]
    fn swap_gadget_exchanges_two_modes() {
        let q = 4;
        let (top, bottom) = (1, 3);
        let u = gate_list_to_unitary(&swap_gadget(q, top, bottom).unwrap()).unwrap();
        for j in 1..=2 * q {
            let mode = (j - 1) / 2;
            let image_mode = if mode == top {
                bottom
            } else if mode == bottom {
                top
            } else {
                mode
            };
            let image = 2 * image_mode + 1 + (j - 1) % 2;
            let g = clifford::majorana(j, q).unwrap();
            let expected = clifford::majorana(image, q).unwrap();
            assert!(g.conjugate_by(&u).unwrap().l2_distance(&expected).unwrap() < 1e-12);
        }
    }

    #[test]
    fn netlist_round_trip() {
        let l = decompose_conv_unitary(FRAC_PI_6, 2).unwrap();
        let text = emit_netlist(&l);
        let parsed = parse_netlist(&text).unwrap();
        assert_eq!(parsed, l);
        assert_eq!(emit_netlist(&parsed), text);
    }
}
