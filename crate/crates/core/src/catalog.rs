//! Deterministic group constructors and the named test corpus.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith;
use crate::error::{GroupError, Result};
use crate::group::FiniteGroup;
use crate::intense::GroupAutomorphism;
use crate::perm::Permutation;
use crate::subgroups::{EmbeddedGroup, Subgroup};

fn check_prime(p: u64) -> Result<()> {
    if arith::is_prime(p) {
        Ok(())
    } else {
        Err(GroupError::NotPrime(p))
    }
}

fn check_odd_prime(p: u64) -> Result<()> {
    check_prime(p)?;
    if p == 2 {
        return Err(GroupError::InvalidParameter("p must be odd".into()));
    }
    Ok(())
}

/// Cyclic group of order `n` acting on `n` points.
pub fn cyclic(n: usize, cap: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("cyclic(0)".into()));
    }
    let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    FiniteGroup::closure(&[Permutation::from_images(images)?], cap)
}

/// Dihedral group of order `2n` acting on the `n` vertices of a polygon.
pub fn dihedral(n: usize, cap: usize) -> Result<FiniteGroup> {
    if n < 3 {
        return Err(GroupError::InvalidParameter(format!("dihedral({n}) needs n >= 3")));
    }
    let m = n as u32;
    let rotation = Permutation::from_images((0..m).map(|i| (i + 1) % m).collect())?;
    let reflection = Permutation::from_images((0..m).map(|i| (m - i) % m).collect())?;
    FiniteGroup::closure(&[rotation, reflection], cap)
}

pub fn symmetric(n: usize, cap: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("symmetric(0)".into()));
    }
    if n == 1 {
        return FiniteGroup::closure(&[Permutation::identity(1)], cap);
    }
    let m = n as u32;
    let cycle = Permutation::from_images((0..m).map(|i| (i + 1) % m).collect())?;
    let swap = Permutation::from_cycles(n, &[&[0, 1]])?;
    FiniteGroup::closure(&[cycle, swap], cap)
}

pub fn alternating(n: usize, cap: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("alternating(0)".into()));
    }
    if n < 3 {
        return FiniteGroup::closure(&[Permutation::identity(n)], cap);
    }
    let gens: Vec<Permutation> = (2..n as u32)
        .map(|k| Permutation::from_cycles(n, &[&[0, 1, k]]))
        .collect::<Result<_>>()?;
    FiniteGroup::closure(&gens, cap)
}

/// `(F_p)^k` as `k` disjoint `p`-cycles; the generators are the cycles in
/// order, giving the standard basis.
pub fn elementary_abelian(p: u64, k: u32, cap: usize) -> Result<FiniteGroup> {
    check_prime(p)?;
    if k == 0 {
        return Err(GroupError::InvalidParameter("elementary_abelian needs k >= 1".into()));
    }
    let p32 = p as u32;
    let degree = (p32 * k) as usize;
    let gens: Vec<Permutation> = (0..k)
        .map(|b| {
            let cycle: Vec<u32> = (0..p32).map(|i| b * p32 + i).collect();
            Permutation::from_cycles(degree, &[&cycle])
        })
        .collect::<Result<_>>()?;
    FiniteGroup::closure(&gens, cap)
}

/// Quaternion group of order 8 in its regular representation.
pub fn quaternion(cap: usize) -> Result<FiniteGroup> {
    let i = Permutation::from_cycles(8, &[&[0, 1, 3, 6], &[2, 5, 7, 4]])?;
    let j = Permutation::from_cycles(8, &[&[0, 2, 3, 7], &[1, 4, 6, 5]])?;
    FiniteGroup::closure(&[i, j], cap)
}

/// A square matrix over `F_p`, row-major.
type Matrix = Vec<Vec<u64>>;

/// The permutation of `F_p^d` (column vectors) induced by `m`. A vector
/// `(c_0, .., c_{d-1})` is the point `Σ c_i p^i`.
fn matrix_permutation(p: u64, m: &Matrix) -> Result<Permutation> {
    let d = m.len();
    let size = p.pow(d as u32) as usize;
    let mut images = Vec::with_capacity(size);
    for point in 0..size {
        let v = decode_vector(p, d, point);
        let w: Vec<u64> = (0..d)
            .map(|i| (0..d).map(|j| m[i][j] * v[j]).sum::<u64>() % p)
            .collect();
        images.push(encode_vector(p, &w) as u32);
    }
    Permutation::from_images(images)
        .map_err(|_| GroupError::InvalidParameter("matrix is not invertible".into()))
}

fn decode_vector(p: u64, d: usize, mut point: usize) -> Vec<u64> {
    (0..d)
        .map(|_| {
            let c = point as u64 % p;
            point /= p as usize;
            c
        })
        .collect()
}

fn encode_vector(p: u64, v: &[u64]) -> usize {
    v.iter().rev().fold(0u64, |acc, &c| acc * p + c) as usize
}

fn primitive_root(p: u64) -> u64 {
    (1..p)
        .find(|&g| multiplicative_order(g, p) == p - 1)
        .expect("prime has a primitive root")
}

fn multiplicative_order(a: u64, n: u64) -> u64 {
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = x * a % n;
        k += 1;
    }
    k
}

fn unitriangular(p: u64, row: usize, col: usize) -> Matrix {
    let mut m = vec![vec![0; 3]; 3];
    for (i, r) in m.iter_mut().enumerate() {
        r[i] = 1;
    }
    m[row][col] = 1 % p;
    m
}

/// Upper unitriangular 3×3 matrices over `F_p` acting on `F_p^3`. The
/// generators are the `u`-entry and `w`-entry elementary matrices.
pub fn heisenberg(p: u64, cap: usize) -> Result<FiniteGroup> {
    check_odd_prime(p)?;
    let x = matrix_permutation(p, &unitriangular(p, 0, 1))?;
    let y = matrix_permutation(p, &unitriangular(p, 1, 2))?;
    FiniteGroup::closure(&[x, y], cap)
}

/// The matrices `[[λ, u, v], [0, 1, w], [0, 0, λ⁻¹]]` over `F_p` acting on
/// `F_p^3`. Generators: `u`-entry, `w`-entry, and the torus element with
/// `λ` a primitive root.
pub fn paper_example_g(p: u64, cap: usize) -> Result<FiniteGroup> {
    check_odd_prime(p)?;
    let g = primitive_root(p);
    let g_inv = (1..p).find(|&y| y * g % p == 1).unwrap();
    let torus = vec![vec![g, 0, 0], vec![0, 1, 0], vec![0, 0, g_inv]];
    let x = matrix_permutation(p, &unitriangular(p, 0, 1))?;
    let y = matrix_permutation(p, &unitriangular(p, 1, 2))?;
    let t = matrix_permutation(p, &torus)?;
    FiniteGroup::closure(&[x, y, t], cap)
}

/// The subgroup of [`paper_example_g`] of matrices with `w = 0`.
pub fn paper_example_w(p: u64, cap: usize) -> Result<(FiniteGroup, Subgroup)> {
    let g = paper_example_g(p, cap)?;
    // The third column (v, w, λ⁻¹) is the image of e_2.
    let e2 = encode_vector(p, &[0, 0, 1]);
    let members: Vec<usize> = (0..g.order())
        .filter(|&i| decode_vector(p, 3, g.element(i).apply(e2))[1] == 0)
        .collect();
    let w = Subgroup::from_members(&g, &members)?;
    Ok((g, w))
}

/// The element `Σ coords[i]·e_i` of a group whose generators are a basis
/// of an elementary abelian group.
pub fn vector_element(v: &FiniteGroup, coords: &[u64]) -> usize {
    v.generators()
        .iter()
        .zip(coords)
        .fold(0, |acc, (&e, &c)| v.mul(acc, v.pow(e, c)))
}

/// A homomorphism from `T` into the automorphisms of `N`, one entry per
/// element of `T`.
#[derive(Clone, Debug)]
pub struct SemidirectAction {
    auts: Vec<GroupAutomorphism>,
}

impl SemidirectAction {
    /// Checks `auts[ab] = auts[a] ∘ auts[b]` on all pairs.
    pub fn new(n: &FiniteGroup, t: &FiniteGroup, auts: Vec<GroupAutomorphism>) -> Result<Self> {
        if auts.len() != t.order() {
            return Err(GroupError::InvalidAction(format!(
                "{} automorphisms for a group of order {}",
                auts.len(),
                t.order()
            )));
        }
        if auts.iter().any(|a| a.map().len() != n.order()) {
            return Err(GroupError::InvalidAction("automorphism of the wrong group".into()));
        }
        if !auts[0].is_identity() {
            return Err(GroupError::InvalidAction("identity acts nontrivially".into()));
        }
        for a in 0..t.order() {
            for b in 0..t.order() {
                if auts[t.mul(a, b)] != auts[a].compose(&auts[b]) {
                    return Err(GroupError::InvalidAction(format!(
                        "action of {a}·{b} is not the composite"
                    )));
                }
            }
        }
        Ok(SemidirectAction { auts })
    }

    pub fn trivial(n: &FiniteGroup, t: &FiniteGroup) -> Self {
        SemidirectAction {
            auts: vec![GroupAutomorphism::identity(n); t.order()],
        }
    }

    /// Extends the automorphisms assigned to `t.generators()`.
    pub fn from_generator_images(
        n: &FiniteGroup,
        t: &FiniteGroup,
        images: &[GroupAutomorphism],
    ) -> Result<Self> {
        if images.len() != t.generators().len() {
            return Err(GroupError::InvalidAction("one automorphism per generator".into()));
        }
        let mut auts: Vec<Option<GroupAutomorphism>> = vec![None; t.order()];
        auts[0] = Some(GroupAutomorphism::identity(n));
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (&s, img) in t.generators().iter().zip(images) {
                let y = t.mul(x, s);
                if auts[y].is_none() {
                    auts[y] = Some(auts[x].as_ref().unwrap().compose(img));
                    queue.push_back(y);
                }
            }
        }
        SemidirectAction::new(n, t, auts.into_iter().map(Option::unwrap).collect())
    }

    pub fn get(&self, t: usize) -> &GroupAutomorphism {
        &self.auts[t]
    }

    pub fn is_trivial(&self) -> bool {
        self.auts.iter().all(|a| a.is_identity())
    }
}

/// `N ⋊ T` together with the images of both factors.
pub struct SemidirectProduct {
    pub group: FiniteGroup,
    pub normal: Subgroup,
    pub complement: Subgroup,
    /// Element of `group` for each element of `N`.
    pub normal_map: Vec<usize>,
    /// Element of `group` for each element of `T`.
    pub complement_map: Vec<usize>,
}

/// `N ⋊ T` with `(n₁,t₁)(n₂,t₂) = (n₁·φ(t₁)(n₂), t₁t₂)`, realized by its
/// left-regular action on the pairs `(n, t)` (point `n·|T| + t`).
pub fn semidirect(
    n: &FiniteGroup,
    t: &FiniteGroup,
    action: &SemidirectAction,
    cap: usize,
) -> Result<SemidirectProduct> {
    let (nn, tt) = (n.order(), t.order());
    if nn.saturating_mul(tt) > cap {
        return Err(GroupError::ClosureCapExceeded { cap });
    }
    if action.auts.len() != tt || action.auts.iter().any(|a| a.map().len() != nn) {
        return Err(GroupError::InvalidAction("action does not match the factors".into()));
    }
    let left_mult = |a: usize, b: usize| -> Permutation {
        let phi = action.get(b);
        let mut images = vec![0u32; nn * tt];
        for x in 0..nn {
            for y in 0..tt {
                let img = n.mul(a, phi.apply(x)) * tt + t.mul(b, y);
                images[x * tt + y] = img as u32;
            }
        }
        Permutation::from_images(images).expect("left multiplication is a bijection")
    };
    let mut gens: Vec<Permutation> = Vec::new();
    gens.extend(n.generators().iter().map(|&s| left_mult(s, 0)));
    gens.extend(t.generators().iter().map(|&s| left_mult(0, s)));
    if gens.is_empty() {
        gens.push(left_mult(0, 0));
    }
    let group = FiniteGroup::closure(&gens, cap)?;
    let normal_map: Vec<usize> = (0..nn)
        .map(|a| group.index_of(&left_mult(a, 0)).expect("factor element"))
        .collect();
    let complement_map: Vec<usize> = (0..tt)
        .map(|b| group.index_of(&left_mult(0, b)).expect("factor element"))
        .collect();
    let normal = Subgroup::from_members(&group, &normal_map)?;
    let complement = Subgroup::from_members(&group, &complement_map)?;
    Ok(SemidirectProduct {
        group,
        normal,
        complement,
        normal_map,
        complement_map,
    })
}

/// `G × H` acting on the disjoint union of their point sets.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<FiniteGroup> {
    let (dg, dh) = (g.degree(), h.degree());
    let lift = |p: &Permutation, offset: usize, total: usize| -> Permutation {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for x in 0..p.degree() {
            images[x + offset] = (p.apply(x) + offset) as u32;
        }
        Permutation::from_images(images).unwrap()
    };
    let mut gens: Vec<Permutation> = Vec::new();
    gens.extend(g.generators().iter().map(|&s| lift(g.element(s), 0, dg + dh)));
    gens.extend(h.generators().iter().map(|&s| lift(h.element(s), dg, dg + dh)));
    FiniteGroup::closure(&gens, cap)
}

/// `C_n ⋊ C_m`, the generator of `C_m` acting as `x ↦ x^r`.
pub fn metacyclic(n: usize, m: usize, r: u64, cap: usize) -> Result<SemidirectProduct> {
    if arith::gcd(r, n as u64) != 1 || (r.pow(m as u32) % n as u64) != 1 % n as u64 {
        return Err(GroupError::InvalidParameter(format!(
            "x -> x^{r} does not define an action of C{m} on C{n}"
        )));
    }
    let cn = cyclic(n, cap)?;
    let cm = cyclic(m, cap)?;
    let x = cn.generators()[0];
    let aut = GroupAutomorphism::from_generator_images(&cn, &[cn.pow(x, r)])?;
    let action = SemidirectAction::from_generator_images(&cn, &cm, &[aut])?;
    semidirect(&cn, &cm, &action, cap)
}

/// `(F_p)^k ⋊ C_m`, the generator of `C_m` acting by `matrix` (column
/// `i` is the image of `e_i`) and `m` its multiplicative order.
pub fn vector_extension(p: u64, matrix: &Matrix, cap: usize) -> Result<SemidirectProduct> {
    let k = matrix.len();
    if k == 0 || matrix.iter().any(|r| r.len() != k) {
        return Err(GroupError::InvalidParameter("matrix must be square".into()));
    }
    let v = elementary_abelian(p, k as u32, cap)?;
    let images: Vec<usize> = (0..k)
        .map(|i| {
            let column: Vec<u64> = (0..k).map(|j| matrix[j][i] % p).collect();
            vector_element(&v, &column)
        })
        .collect();
    let aut = GroupAutomorphism::from_generator_images(&v, &images)?;
    let mut m = 1;
    let mut power = aut.clone();
    while !power.is_identity() {
        power = power.compose(&aut);
        m += 1;
    }
    let cm = cyclic(m, cap)?;
    let action = SemidirectAction::from_generator_images(&v, &cm, &[aut])?;
    semidirect(&v, &cm, &action, cap)
}

/// `Heis(F_p) ⋊ C_m`, the generator acting by `x ↦ x^a`, `y ↦ y^b` on the
/// `u`- and `w`-entry generators; `a = b = λ` is the diagonal
/// `diag(λ, 1, λ⁻¹)` conjugation.
pub fn heisenberg_torus(p: u64, a: u64, b: u64, cap: usize) -> Result<SemidirectProduct> {
    let h = heisenberg(p, cap)?;
    let (x, y) = (h.generators()[0], h.generators()[1]);
    let aut = GroupAutomorphism::from_generator_images(&h, &[h.pow(x, a), h.pow(y, b)])?;
    let m = arith::lcm(multiplicative_order(a, p), multiplicative_order(b, p)) as usize;
    let cm = cyclic(m, cap)?;
    let action = SemidirectAction::from_generator_images(&h, &cm, &[aut])?;
    semidirect(&h, &cm, &action, cap)
}

/// The linear group `GL(3, 2)` of order 168 acting on `F_2^3`.
pub fn general_linear_3_2(cap: usize) -> Result<FiniteGroup> {
    let gens: Vec<Permutation> = [(0, 1), (1, 2), (2, 0)]
        .iter()
        .map(|&(r, c)| {
            let mut m = vec![vec![0; 3]; 3];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 1;
            }
            m[r][c] = 1;
            matrix_permutation(2, &m)
        })
        .collect::<Result<_>>()?;
    FiniteGroup::closure(&gens, cap)
}

/// Verdicts known in advance for a catalog entry.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedVerdicts {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evolving: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub supersolvable: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub constructor: String,
    #[serde(default)]
    pub params: Value,
    pub order: usize,
    pub provenance: String,
    #[serde(default)]
    pub expected_verdicts: ExpectedVerdicts,
}

const MANIFEST: &str = include_str!("../catalog.json");

/// The shipped catalog manifest, in file order.
pub fn entries() -> Vec<CatalogEntry> {
    serde_json::from_str(MANIFEST).expect("catalog manifest is valid JSON")
}

pub fn manifest_json() -> &'static str {
    MANIFEST
}

pub fn find(name: &str) -> Result<CatalogEntry> {
    entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| GroupError::UnknownEntry(name.to_string()))
}

fn param_u64(params: &Value, key: &str) -> Result<u64> {
    params
        .get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| GroupError::InvalidParameter(format!("missing integer parameter {key:?}")))
}

fn param_matrix(params: &Value, key: &str) -> Result<Matrix> {
    serde_json::from_value(params.get(key).cloned().unwrap_or(Value::Null))
        .map_err(|_| GroupError::InvalidParameter(format!("missing matrix parameter {key:?}")))
}

/// Builds the group of an entry.
pub fn build(entry: &CatalogEntry, cap: usize) -> Result<FiniteGroup> {
    let p = &entry.params;
    let u = |key: &str| param_u64(p, key);
    let group = match entry.constructor.as_str() {
        "cyclic" => cyclic(u("n")? as usize, cap)?,
        "dihedral" => dihedral(u("n")? as usize, cap)?,
        "symmetric" => symmetric(u("n")? as usize, cap)?,
        "alternating" => alternating(u("n")? as usize, cap)?,
        "elementary_abelian" => elementary_abelian(u("p")?, u("k")? as u32, cap)?,
        "quaternion" => quaternion(cap)?,
        "heisenberg" => heisenberg(u("p")?, cap)?,
        "paper_G" => paper_example_g(u("p")?, cap)?,
        "paper_W" => {
            let (g, w) = paper_example_w(u("p")?, cap)?;
            EmbeddedGroup::new(&g, &w)?.group
        }
        "general_linear_3_2" => general_linear_3_2(cap)?,
        "metacyclic" => metacyclic(u("n")? as usize, u("m")? as usize, u("r")?, cap)?.group,
        "vector_extension" => vector_extension(u("p")?, &param_matrix(p, "matrix")?, cap)?.group,
        "heisenberg_torus" => heisenberg_torus(u("p")?, u("a")?, u("b")?, cap)?.group,
        "direct" => {
            let names: Vec<String> = serde_json::from_value(
                p.get("factors").cloned().unwrap_or(Value::Null),
            )
            .map_err(|_| GroupError::InvalidParameter("direct needs factors".into()))?;
            let mut acc: Option<FiniteGroup> = None;
            for name in names {
                let factor = build(&find(&name)?, cap)?;
                acc = Some(match acc {
                    None => factor,
                    Some(prev) => direct_product(&prev, &factor, cap)?,
                });
            }
            acc.ok_or_else(|| GroupError::InvalidParameter("direct needs factors".into()))?
        }
        other => {
            return Err(GroupError::InvalidParameter(format!(
                "unknown constructor {other:?}"
            )))
        }
    };
    Ok(group)
}

pub fn build_by_name(name: &str, cap: usize) -> Result<FiniteGroup> {
    build(&find(name)?, cap)
}
