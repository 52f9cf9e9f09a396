//! Pauli-product rotations `exp(-iθP/2)` and their exact arithmetic.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, PauliString};

/// Identifier carried by an operation through the optimizer passes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct OpTag(pub u32);

impl fmt::Display for OpTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A rotation about a Pauli string. The angle is never zero.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RotationOp {
    pauli: PauliString,
    angle: Angle,
    tag: OpTag,
}

impl RotationOp {
    pub fn new(pauli: PauliString, angle: Angle, tag: OpTag) -> Result<Self> {
        if angle.is_zero() {
            return Err(Error::ZeroAngle);
        }
        Ok(Self { pauli, angle, tag })
    }

    pub fn pauli(&self) -> &PauliString {
        &self.pauli
    }

    pub fn angle(&self) -> Angle {
        self.angle
    }

    pub fn tag(&self) -> OpTag {
        self.tag
    }

    pub fn with_tag(mut self, tag: OpTag) -> Self {
        self.tag = tag;
        self
    }

    pub fn num_qubits(&self) -> usize {
        self.pauli.len()
    }

    /// The angle with the string's sign folded in: `-P` at `θ` rotates like `+P` at `-θ`.
    pub fn signed_angle(&self) -> Angle {
        if self.pauli.is_negative() {
            -self.angle
        } else {
            self.angle
        }
    }

    /// Equivalent rotation with a positive string.
    pub fn canonical(&self) -> Self {
        Self {
            pauli: self.pauli.clone().with_sign(false),
            angle: self.signed_angle(),
            tag: self.tag,
        }
    }
}

impl fmt::Display for RotationOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.angle, self.pauli)
    }
}

impl fmt::Debug for RotationOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.angle, self.pauli, self.tag)
    }
}

impl FromStr for RotationOp {
    type Err = Error;

    /// Parses the `<angle> <string>` line format.
    fn from_str(s: &str) -> Result<Self> {
        let mut it = s.split_whitespace();
        let (Some(angle), Some(pauli), None) = (it.next(), it.next(), it.next()) else {
            return Err(Error::InvalidPauli(s.to_owned()));
        };
        RotationOp::new(pauli.parse()?, angle.parse()?, OpTag::default())
    }
}

/// Sums the angles of rotations about one Pauli string, folding each sign bit in.
///
/// The result may be zero, meaning the group cancels.
pub fn fuse_angles(ops: &[RotationOp]) -> Result<Angle> {
    let Some(first) = ops.first() else {
        return Ok(Angle::ZERO);
    };
    let letters = first.pauli.letters();
    if ops.iter().any(|op| op.pauli.letters() != letters) {
        return Err(Error::FusionMismatch);
    }
    Ok(ops.iter().map(RotationOp::signed_angle).sum())
}

/// Rewrites a rotation so that no factor carries a `Y` letter.
///
/// With `Q` the qubits carrying `Y`, `P = S_Q P' S_Q†` where `P'` has `X` on `Q`.
/// In time order the output is `Z_q` at `-π/2` for each `q ∈ Q`, then `P'` at
/// the original angle, then `Z_q` at `+π/2`. Every output op keeps the input tag.
pub fn decompose_y(op: &RotationOp) -> Vec<RotationOp> {
    let ys: Vec<usize> = op
        .pauli
        .letters()
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == PauliLetter::Y)
        .map(|(q, _)| q)
        .collect();
    if ys.is_empty() {
        return vec![op.clone()];
    }
    let n = op.num_qubits();
    let z_turn = |q: usize, angle: Angle| RotationOp {
        pauli: PauliString::single(n, q, PauliLetter::Z),
        angle,
        tag: op.tag,
    };
    let mut core = op.pauli.clone();
    for &q in &ys {
        core.set_letter(q, PauliLetter::X);
    }
    let mut out = Vec::with_capacity(2 * ys.len() + 1);
    out.extend(ys.iter().map(|&q| z_turn(q, -Angle::PI_2)));
    out.push(RotationOp {
        pauli: core,
        angle: op.angle,
        tag: op.tag,
    });
    out.extend(ys.iter().map(|&q| z_turn(q, Angle::PI_2)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(s: &str) -> RotationOp {
        s.parse().unwrap()
    }

    #[test]
    fn zero_angle_is_rejected() {
        assert!(matches!(
            RotationOp::new("Z".parse().unwrap(), Angle::ZERO, OpTag(0)),
            Err(Error::ZeroAngle)
        ));
        assert!("0 +Z".parse::<RotationOp>().is_err());
    }

    #[test]
    fn fusion_cases() {
        assert_eq!(fuse_angles(&[op("pi/4 +ZZ"), op("pi/4 +ZZ")]).unwrap(), Angle::PI_2);
        assert_eq!(fuse_angles(&[op("pi/4 +ZZ"), op("-pi/4 +ZZ")]).unwrap(), Angle::ZERO);
        assert_eq!(
            fuse_angles(&[op("pi/4 +Z"), op("pi/2 +Z")]).unwrap(),
            "3pi/4".parse().unwrap()
        );
        assert_eq!(fuse_angles(&[op("pi/4 +Z"), op("pi/4 -Z")]).unwrap(), Angle::ZERO);
        assert!(matches!(
            fuse_angles(&[op("pi/4 +ZZ"), op("pi/4 +ZX")]),
            Err(Error::FusionMismatch)
        ));
    }

    #[test]
    fn canonical_folds_sign() {
        let c = op("pi/4 -XZ").canonical();
        assert!(!c.pauli().is_negative());
        assert_eq!(c.angle(), -Angle::PI_4);
    }

    #[test]
    fn y_decomposition_shape() {
        let out = decompose_y(&op("pi/4 +Y"));
        let shown: Vec<String> = out.iter().map(|o| o.to_string()).collect();
        assert_eq!(shown, ["-pi/2 +Z", "pi/4 +X", "pi/2 +Z"]);

        let out = decompose_y(&op("pi/4 -YZY"));
        let shown: Vec<String> = out.iter().map(|o| o.to_string()).collect();
        assert_eq!(
            shown,
            ["-pi/2 +ZII", "-pi/2 +IIZ", "pi/4 -XZX", "pi/2 +ZII", "pi/2 +IIZ"]
        );
        assert!(out.iter().all(|o| !o.pauli().has_y()));
    }

    #[test]
    fn y_free_passthrough() {
        let o = op("pi/4 +XZ");
        assert_eq!(decompose_y(&o), vec![o]);
    }
}
