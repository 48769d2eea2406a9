//! Small groups and linear actions used throughout the tests, the CLI
//! and the demo.

use std::sync::Arc;

use crate::classes::LinearGAction;
use crate::cyclotomic::Cyclo;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::Matrix;

/// `Z/n` with `g^k` at index `k`.
pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let labels = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{k}"),
        })
        .collect();
    Arc::new(
        FiniteGroup::from_cayley(&format!("Z{n}"), &table)
            .expect("cyclic group")
            .with_labels(labels),
    )
}

/// `{e, a, b, ab}` in that order.
pub fn klein4() -> Arc<FiniteGroup> {
    let table: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
    let labels = ["e", "a", "b", "ab"].map(String::from).to_vec();
    Arc::new(FiniteGroup::from_cayley("K4", &table).expect("Klein group").with_labels(labels))
}

/// The full symmetric group on `n` points.
pub fn sym(n: usize) -> Arc<FiniteGroup> {
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        gens.push(t);
        gens.push((0..n).map(|i| (i + 1) % n).collect());
    } else {
        gens.push((0..n.max(1)).collect());
    }
    Arc::new(FiniteGroup::from_permutations(&format!("S{n}"), &gens).expect("symmetric group"))
}

pub fn s3() -> Arc<FiniteGroup> {
    sym(3)
}

pub fn s4() -> Arc<FiniteGroup> {
    sym(4)
}

/// Symmetries of the square, `r = (0123)` and `s = (13)`.
pub fn d4() -> Arc<FiniteGroup> {
    let gens = vec![vec![1, 2, 3, 0], vec![0, 3, 2, 1]];
    Arc::new(FiniteGroup::from_permutations("D4", &gens).expect("dihedral group"))
}

/// Quaternion units `1, -1, i, -i, j, -j, k, -k`.
pub fn q8() -> Arc<FiniteGroup> {
    // unit index u in 0..4 for 1, i, j, k, and sign bit
    fn unit_mul(a: usize, b: usize) -> (usize, bool) {
        match (a, b) {
            (0, x) | (x, 0) => (x, false),
            (x, y) if x == y => (0, true),
            (1, 2) => (3, false),
            (2, 3) => (1, false),
            (3, 1) => (2, false),
            (2, 1) => (3, true),
            (3, 2) => (1, true),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    }
    let table: Vec<Vec<usize>> = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (u, neg) = unit_mul(a / 2, b / 2);
                    2 * u + ((a % 2 + b % 2 + neg as usize) % 2)
                })
                .collect()
        })
        .collect();
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
    Arc::new(FiniteGroup::from_cayley("Q8", &table).expect("quaternion group").with_labels(labels))
}

/// The groups every catalog-wide property is checked on.
pub fn groups() -> Vec<Arc<FiniteGroup>> {
    vec![cyclic(2), cyclic(3), cyclic(4), cyclic(6), klein4(), s3(), d4(), q8(), s4()]
}

/// Looks up `Z<n>`, `K4`, `S<n>`, `D4` or `Q8` (case-insensitive).
pub fn group_by_name(name: &str) -> Result<Arc<FiniteGroup>> {
    let lower = name.to_ascii_lowercase();
    let num = |s: &str| s.parse::<usize>().ok();
    match lower.as_str() {
        "k4" | "klein4" | "klein" => Ok(klein4()),
        "d4" => Ok(d4()),
        "q8" => Ok(q8()),
        _ => {
            if let Some(n) = lower.strip_prefix('z').and_then(num).filter(|&n| (1..=256).contains(&n)) {
                Ok(cyclic(n))
            } else if let Some(n) = lower.strip_prefix('s').and_then(num).filter(|&n| (1..=6).contains(&n)) {
                Ok(sym(n))
            } else {
                Err(Error::Unknown(format!("group `{name}`")))
            }
        }
    }
}

fn diag(entries: &[Cyclo]) -> Matrix<Cyclo> {
    let n = entries.len();
    (0..n).map(|i| (0..n).map(|j| if i == j { entries[i].clone() } else { Cyclo::zero() }).collect()).collect()
}

fn zeta(k: i64, n: u32) -> Cyclo {
    Cyclo::root_of_unity(k, n)
}

/// `Z/n ⊂ SL(2)` acting by `diag(ζ_n, ζ_n⁻¹)`.
pub fn cyclic_sl2(n: usize) -> LinearGAction {
    let g = cyclic(n);
    let m = diag(&[zeta(1, n as u32), zeta(-1, n as u32)]);
    let gens = if n > 1 { vec![(1, m)] } else { vec![] };
    LinearGAction::from_generators(&format!("Z{n} in SL2"), g, &gens).expect("cyclic action")
}

/// `Z/2` acting on `C²` by `-1`.
pub fn z2_minus_one() -> LinearGAction {
    let m = diag(&[Cyclo::from_int(-1), Cyclo::from_int(-1)]);
    LinearGAction::from_generators("Z2 by -1", cyclic(2), &[(1, m)]).expect("action")
}

/// `Z/4` acting on `C¹` by `i`.
pub fn z4_on_c1() -> LinearGAction {
    LinearGAction::from_generators("Z4 on C1", cyclic(4), &[(1, diag(&[zeta(1, 4)]))]).expect("action")
}

/// `Z/4` acting on `C²` by `diag(i, i)`.
pub fn z4_on_c2() -> LinearGAction {
    let i = zeta(1, 4);
    LinearGAction::from_generators("Z4 on C2", cyclic(4), &[(1, diag(&[i.clone(), i]))]).expect("action")
}

/// Klein four-group on `C²`, `a = diag(-1, 1)`, `b = diag(1, -1)`.
pub fn klein4_c2() -> LinearGAction {
    let one = Cyclo::one();
    let neg = Cyclo::from_int(-1);
    let gens = vec![(1, diag(&[neg.clone(), one.clone()])), (2, diag(&[one, neg]))];
    LinearGAction::from_generators("K4 on C2", klein4(), &gens).expect("action")
}

/// `S3` on the plane `x0 + x1 + x2 = 0` with basis `e0 - e1`, `e1 - e2`.
pub fn s3_standard() -> LinearGAction {
    let g = s3();
    let gens: Vec<(usize, Matrix<Cyclo>)> = g
        .elements()
        .map(|x| {
            let p = g.permutation(x).expect("permutation group");
            let image = |v: [i64; 3]| {
                let mut w = [0i64; 3];
                for (i, &c) in v.iter().enumerate() {
                    w[p[i] as usize] += c;
                }
                // coordinates in the basis e0 - e1, e1 - e2
                [w[0], w[0] + w[1]]
            };
            let c1 = image([1, -1, 0]);
            let c2 = image([0, 1, -1]);
            let m = vec![
                vec![Cyclo::from_int(c1[0]), Cyclo::from_int(c2[0])],
                vec![Cyclo::from_int(c1[1]), Cyclo::from_int(c2[1])],
            ];
            (x, m)
        })
        .collect();
    LinearGAction::from_generators("S3 on C2", g, &gens).expect("action")
}

/// Every linear action the obstruction and identity checks run over.
pub fn actions() -> Vec<LinearGAction> {
    let mut out: Vec<LinearGAction> = (2..=6).map(cyclic_sl2).collect();
    out.push(klein4_c2());
    out.push(s3_standard());
    out.push(z4_on_c2());
    out
}

/// Looks up an action by the names `z<n>_sl2`, `z2_minus_one`, `z4_c1`,
/// `z4_c2`, `klein4_c2` and `s3_standard`.
pub fn action_by_name(name: &str) -> Result<LinearGAction> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "z2_minus_one" => Ok(z2_minus_one()),
        "z4_c1" => Ok(z4_on_c1()),
        "z4_c2" => Ok(z4_on_c2()),
        "klein4_c2" | "k4_c2" => Ok(klein4_c2()),
        "s3_standard" => Ok(s3_standard()),
        _ => match lower.strip_prefix('z').and_then(|s| s.strip_suffix("_sl2")).and_then(|s| s.parse::<usize>().ok()) {
            Some(n) if (1..=24).contains(&n) => Ok(cyclic_sl2(n)),
            _ => Err(Error::Unknown(format!("action `{name}`"))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        let orders: Vec<usize> = groups().iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![2, 3, 4, 6, 4, 6, 8, 8, 24]);
        assert!(!q8().is_abelian());
        assert_eq!(q8().conjugacy_classes().len(), 5);
        assert_eq!(d4().conjugacy_classes().len(), 5);
        assert_eq!(s4().conjugacy_classes().len(), 5);
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(group_by_name("z6").unwrap().order(), 6);
        assert_eq!(group_by_name("S4").unwrap().order(), 24);
        assert!(group_by_name("foo").is_err());
        assert_eq!(action_by_name("Z5_sl2").unwrap().group().order(), 5);
        assert!(action_by_name("z5").is_err());
    }

    #[test]
    fn actions_are_faithful_of_the_expected_dimension() {
        for a in actions() {
            let g = a.group();
            for x in g.elements().skip(1) {
                assert!(a.fixed_dim(&[x]) < a.dim(), "{} has kernel", a.name());
            }
        }
        let s = s3_standard();
        let chi = s.rep().character();
        let mut vals: Vec<i64> = s
            .group()
            .conjugacy_classes()
            .iter()
            .map(|c| chi.value(c.representative).try_rational().unwrap().to_integer().try_into().unwrap())
            .collect();
        vals.sort();
        assert_eq!(vals, vec![-1, 0, 2]);
    }
}
