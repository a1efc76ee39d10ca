//! Finite abelian groups as explicit products `Z_d1 x ... x Z_dr`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid group spec {0:?}: expected moduli >= 2 joined by 'x', e.g. \"2x2\"")]
    InvalidSpec(String),
    #[error("invalid element {0:?}")]
    InvalidElement(String),
    #[error("element has {found} components, group has {expected}")]
    ComponentMismatch { expected: usize, found: usize },
    #[error("residue {residue} out of range for component {component} (Z_{modulus})")]
    ResidueOutOfRange {
        component: usize,
        residue: u64,
        modulus: u64,
    },
    #[error("multiplication by {k} is not invertible: gcd({k}, {modulus}) != 1 in component {component}")]
    NoInverse {
        k: u64,
        component: usize,
        modulus: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    moduli: Vec<u64>,
}

/// Residue vector; which group it belongs to is tracked by the caller.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    residues: Vec<u64>,
}

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.residues.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

impl AbelianGroup {
    pub fn new(moduli: Vec<u64>) -> Result<Self, GroupError> {
        if moduli.is_empty() || moduli.iter().any(|&d| d < 2) {
            let spec = moduli
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join("x");
            return Err(GroupError::InvalidSpec(spec));
        }
        Ok(Self { moduli })
    }

    /// Cyclic group `Z_d`.
    pub fn cyclic(d: u64) -> Result<Self, GroupError> {
        Self::new(vec![d])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            residues: vec![0; self.moduli.len()],
        }
    }

    /// Element from residues, each reduced into range.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement, GroupError> {
        self.check_len(residues.len())?;
        Ok(GroupElement {
            residues: residues
                .iter()
                .zip(&self.moduli)
                .map(|(&r, &d)| r.rem_euclid(d as i64) as u64)
                .collect(),
        })
    }

    /// Element from residues that must already be in range.
    pub fn element_exact(&self, residues: Vec<u64>) -> Result<GroupElement, GroupError> {
        self.check_len(residues.len())?;
        for (component, (&residue, &modulus)) in residues.iter().zip(&self.moduli).enumerate() {
            if residue >= modulus {
                return Err(GroupError::ResidueOutOfRange {
                    component,
                    residue,
                    modulus,
                });
            }
        }
        Ok(GroupElement { residues })
    }

    /// Parses the comma-separated residue form, e.g. `"1,0"`.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement, GroupError> {
        let residues = text
            .trim()
            .split(',')
            .map(|t| t.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| GroupError::InvalidElement(text.to_string()))?;
        self.element_exact(residues)
    }

    /// All elements in mixed-radix order (last component fastest).
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.identity()];
        for (i, &d) in self.moduli.iter().enumerate() {
            out = out
                .into_iter()
                .flat_map(|e| {
                    (0..d).map(move |r| {
                        let mut e = e.clone();
                        e.residues[i] = r;
                        e
                    })
                })
                .collect();
        }
        out
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.residues.len() == self.moduli.len()
            && g.residues.iter().zip(&self.moduli).all(|(r, d)| r < d)
    }

    fn check_len(&self, found: usize) -> Result<(), GroupError> {
        if found != self.moduli.len() {
            return Err(GroupError::ComponentMismatch {
                expected: self.moduli.len(),
                found,
            });
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_len(a.residues.len())?;
        self.check_len(b.residues.len())?;
        let mut out = a.clone();
        self.add_assign(&mut out, b);
        Ok(out)
    }

    /// In-place `a += b`; both must belong to the group.
    #[inline]
    pub fn add_assign(&self, a: &mut GroupElement, b: &GroupElement) {
        for ((x, &y), &d) in a.residues.iter_mut().zip(&b.residues).zip(&self.moduli) {
            *x = (*x + y) % d;
        }
    }

    /// In-place `a -= b`; both must belong to the group.
    #[inline]
    pub fn sub_assign(&self, a: &mut GroupElement, b: &GroupElement) {
        for ((x, &y), &d) in a.residues.iter_mut().zip(&b.residues).zip(&self.moduli) {
            *x = (*x + d - y) % d;
        }
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_len(a.residues.len())?;
        let mut out = self.identity();
        self.sub_assign(&mut out, a);
        Ok(out)
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_len(a.residues.len())?;
        self.check_len(b.residues.len())?;
        let mut out = a.clone();
        self.sub_assign(&mut out, b);
        Ok(out)
    }

    /// `m`-fold sum of `g`.
    pub fn scalar_mul(&self, m: u64, g: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_len(g.residues.len())?;
        Ok(GroupElement {
            residues: g
                .residues
                .iter()
                .zip(&self.moduli)
                .map(|(&r, &d)| ((m as u128 % d as u128) * r as u128 % d as u128) as u64)
                .collect(),
        })
    }

    /// The unique `h` with `k * h = g`, as `(k^-1 mod d_i) * g_i` per component.
    ///
    /// Requires `gcd(|group|, k) = 1`; otherwise names the first component
    /// whose modulus shares a factor with `k`.
    pub fn solve_scaled(&self, k: u64, g: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_len(g.residues.len())?;
        let mut residues = Vec::with_capacity(self.moduli.len());
        for (component, (&r, &d)) in g.residues.iter().zip(&self.moduli).enumerate() {
            let inv = mod_inverse(k % d, d).ok_or(GroupError::NoInverse {
                k,
                component,
                modulus: d,
            })?;
            residues.push((inv as u128 * r as u128 % d as u128) as u64);
        }
        Ok(GroupElement { residues })
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.moduli.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl FromStr for AbelianGroup {
    type Err = GroupError;

    /// `"d1xd2x...xdr"`, e.g. `"5"`, `"2x2"`, `"3x5"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let moduli = s
            .trim()
            .split('x')
            .map(|t| t.trim().parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| GroupError::InvalidSpec(s.to_string()))?;
        Self::new(moduli).map_err(|_| GroupError::InvalidSpec(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(spec: &str) -> AbelianGroup {
        spec.parse().unwrap()
    }

    #[test]
    fn addition() {
        let z5 = g("5");
        let a = z5.element(&[3]).unwrap();
        let b = z5.element(&[4]).unwrap();
        assert_eq!(z5.add(&a, &b).unwrap(), z5.element(&[2]).unwrap());

        let z2z3 = g("2x3");
        let x = z2z3.element(&[1, 2]).unwrap();
        assert_eq!(z2z3.add(&x, &x).unwrap(), z2z3.element(&[0, 1]).unwrap());
        assert_eq!(
            z2z3.add(&x, &z2z3.neg(&x).unwrap()).unwrap(),
            z2z3.identity()
        );
    }

    #[test]
    fn mismatched_components() {
        let z2z3 = g("2x3");
        let z5 = g("5");
        let a = z5.identity();
        assert_eq!(
            z2z3.add(&a, &z2z3.identity()),
            Err(GroupError::ComponentMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn scalar() {
        let z5 = g("5");
        let three = z5.element(&[3]).unwrap();
        assert_eq!(z5.scalar_mul(3, &three).unwrap(), z5.element(&[4]).unwrap());
        assert_eq!(z5.scalar_mul(0, &three).unwrap(), z5.identity());
        let k4 = g("2x2");
        let e = k4.element(&[1, 0]).unwrap();
        assert_eq!(k4.scalar_mul(3, &e).unwrap(), e);
        for grp in [g("5"), g("2x2"), g("3x5"), g("4x6")] {
            for e in grp.elements() {
                assert_eq!(grp.scalar_mul(grp.order(), &e).unwrap(), grp.identity());
            }
        }
    }

    #[test]
    fn solve() {
        let z5 = g("5");
        let h = z5.solve_scaled(3, &z5.element(&[4]).unwrap()).unwrap();
        assert_eq!(h, z5.element(&[3]).unwrap());
        let k4 = g("2x2");
        let e = k4.element(&[1, 0]).unwrap();
        assert_eq!(k4.solve_scaled(3, &e).unwrap(), e);
        let z6 = g("6");
        assert_eq!(
            z6.solve_scaled(3, &z6.element(&[1]).unwrap()),
            Err(GroupError::NoInverse {
                k: 3,
                component: 0,
                modulus: 6
            })
        );
        let z5z6 = g("5x6");
        assert!(matches!(
            z5z6.solve_scaled(3, &z5z6.identity()),
            Err(GroupError::NoInverse { component: 1, .. })
        ));
    }

    #[test]
    fn solve_exhaustive_small_groups() {
        // every group of order <= 60 given as a product of small cyclic factors
        let specs: Vec<String> = (2..=60u64)
            .map(|d| d.to_string())
            .chain(
                [
                    "2x2", "2x3", "3x3", "2x2x2", "2x4", "3x5", "2x2x3", "4x4", "2x3x5", "2x5x6",
                ]
                .map(String::from),
            )
            .collect();
        for spec in specs {
            let grp = g(&spec);
            let w = grp.order();
            for k in 1..=12u64 {
                let ok = gcd(w, k) == 1;
                for e in grp.elements() {
                    match grp.solve_scaled(k, &e) {
                        Ok(h) => {
                            assert!(ok, "{spec} k={k} solved despite gcd");
                            assert_eq!(grp.scalar_mul(k, &h).unwrap(), e);
                        }
                        Err(GroupError::NoInverse { .. }) => assert!(!ok, "{spec} k={k}"),
                        Err(other) => panic!("{other}"),
                    }
                }
            }
        }
    }

    #[test]
    fn spec_strings() {
        assert_eq!(g("3x5").order(), 15);
        assert_eq!(g("2x2").to_string(), "2x2");
        assert!("1".parse::<AbelianGroup>().is_err());
        assert!("".parse::<AbelianGroup>().is_err());
        assert!("2xx3".parse::<AbelianGroup>().is_err());
        let k4 = g("2x2");
        assert_eq!(k4.parse_element("1,0").unwrap().to_string(), "1,0");
        assert!(k4.parse_element("2,0").is_err());
        assert!(k4.parse_element("1").is_err());
    }

    #[test]
    fn inverse() {
        assert_eq!(mod_inverse(3, 5), Some(2));
        assert_eq!(mod_inverse(3, 6), None);
        assert_eq!(mod_inverse(1, 2), Some(1));
        assert_eq!(mod_inverse(0, 1), Some(0));
    }
}
