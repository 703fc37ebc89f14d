//! Cartan data, Drinfeld–Jimbo presentations, the inhomogeneous bialgebra
//! preset and the checks tying the two together.
//!
//! Preset generators, in rewrite order:
//!
//! ```text
//! T = | a  0 |   U = | x  y |   E = (d e)   F = | f |
//!     | b  c |       | 0  z |                   | g |
//! ```
//!
//! with weights 2 for `T`, `U` letters and 1 for `E`, `F` letters so that
//! `EF − FE = T − U` is homogeneous.
//!
//! Componentwise forms of the matrix relations (indices in `{1, 2}`, summed
//! over repeated `k, l`):
//!
//! | family | relation |
//! |--------|----------|
//! | `RTT`  | `R^{ij}_{kl} T^k_m T^l_n = T^j_l T^i_k R^{kl}_{mn}` |
//! | `RUU`  | `R^{ij}_{kl} U^k_m U^l_n = U^j_l U^i_k R^{kl}_{mn}` |
//! | `RUT`  | `R^{ij}_{kl} U^k_m T^l_n = T^j_l U^i_k R^{kl}_{mn}` |
//! | `ET`   | `E_m T^j_n = T^j_l E_k R^{kl}_{mn}` |
//! | `FU`   | `F^j U^i_n = R^{ij}_{kl} U^k_n F^l` |
//! | `TF`   | `T^j_n F^i = R^{ij}_{kl} F^k T^l_n` |
//! | `UE`   | `U^i_m E_n = E_l U^i_k R^{kl}_{mn}` |
//! | `EF`   | `E_j F^i − F^i E_j = T^i_j − U^i_j` |

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::braided::{r_matrix, relations_from_omega, solve_omega, NormalizedR};
use crate::freealg::{
    AlgebraMap, Coproduct, GenId, GeneratorTable, Membership, NcPoly, RelationSet, RewriteSystem, Word,
};
use crate::linalg::{multi_index, Matrix, OmegaTensor};
use crate::report::{Report, Status};
use crate::scalar::{normalize_content, Exponent, RootOrder, Scalar};
use crate::{Error, Result};

/// A rank-two Cartan matrix with its symmetrizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: [[i64; 2]; 2],
    symmetrizer: [i64; 2],
}

impl CartanMatrix {
    pub fn new(entries: [[i64; 2]; 2], symmetrizer: [i64; 2]) -> Result<Self> {
        let a = entries;
        let d = symmetrizer;
        if a[0][0] != 2 || a[1][1] != 2 {
            return Err(Error::Input("Cartan diagonal must be 2".into()));
        }
        if a[0][1] > 0 || a[1][0] > 0 || (a[0][1] == 0) != (a[1][0] == 0) {
            return Err(Error::Input("Cartan off-diagonal entries must be non-positive and vanish together".into()));
        }
        if d[0] <= 0 || d[1] <= 0 || d[0] * a[0][1] != d[1] * a[1][0] {
            return Err(Error::Input("symmetrizer must be positive with d_i a_ij = d_j a_ji".into()));
        }
        Ok(CartanMatrix { entries, symmetrizer })
    }

    /// Like [`CartanMatrix::new`] with the smallest positive symmetrizer.
    pub fn from_entries(entries: [[i64; 2]; 2]) -> Result<Self> {
        let (x, y) = (-entries[0][1], -entries[1][0]);
        let d = if x == 0 || y == 0 {
            [1, 1]
        } else {
            use num_integer::Integer;
            let g = x.gcd(&y);
            [y / g, x / g]
        };
        CartanMatrix::new(entries, d)
    }

    /// `[[2, −1], [−(N−1), 2]]` with `d = (N−1, 1)`.
    pub fn for_order(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Input(format!("order {n} below 2")));
        }
        let k = n as i64 - 1;
        CartanMatrix::new([[2, -1], [-k, 2]], [k, 1])
    }

    /// `a_{ij}` with 1-based indices.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i - 1][j - 1]
    }

    pub fn symmetrizer(&self, i: usize) -> i64 {
        self.symmetrizer[i - 1]
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        self.entries
    }
}

impl core::fmt::Display for CartanMatrix {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let a = self.entries;
        write!(f, "{},{};{},{}", a[0][0], a[0][1], a[1][0], a[1][1])
    }
}

/// Symmetric q-number `[m]` in the base `q^base`.
pub fn qnumber(m: i64, base: Exponent, order: RootOrder) -> Result<Scalar> {
    if m < 0 {
        return Err(Error::Input(format!("negative q-number {m}")));
    }
    let mut out = Scalar::zero();
    for k in 0..m {
        out += &Scalar::q_exp(base.scale(m - 1 - 2 * k, 1).unwrap(), order)?;
    }
    Ok(out)
}

/// `[n]! / ([k]! [n−k]!)` in the base `q^base`.
pub fn qbinom_at(n: i64, k: i64, base: Exponent, order: RootOrder) -> Result<Scalar> {
    if k < 0 || k > n {
        return Err(Error::Input(format!("q-binomial index {k} outside 0..={n}")));
    }
    let fact = |m: i64| -> Result<Scalar> {
        let mut acc = Scalar::one();
        for j in 1..=m {
            acc = &acc * &qnumber(j, base, order)?;
        }
        Ok(acc)
    };
    Ok(fact(n)?.try_div(&(&fact(k)? * &fact(n - k)?))?)
}

pub fn qbinom(n: i64, k: i64, order: RootOrder) -> Result<Scalar> {
    qbinom_at(n, k, Exponent::integer(1), order)
}

/// q-Serre relations `Σ_r (−1)^r [1−a_ij r]_{q_i} X_i^{1−a_ij−r} X_j X_i^r`
/// for `i ≠ j`, with `q_i = q_dj^{d_i}`; returned as `(i, j, poly)`.
pub fn serre_relations(
    a: &CartanMatrix,
    x: [GenId; 2],
    q_dj: Exponent,
    order: RootOrder,
) -> Result<Vec<(usize, usize, NcPoly)>> {
    let mut out = Vec::new();
    for (i, j) in [(1usize, 2usize), (2, 1)] {
        let n = 1 - a.entry(i, j);
        let qi = q_dj.scale(a.symmetrizer(i), 1).unwrap();
        let mut p = NcPoly::zero();
        for r in 0..=n {
            let mut c = qbinom_at(n, r, qi, order)?;
            if r % 2 == 1 {
                c = -c;
            }
            let mut w = vec![x[i - 1]; (n - r) as usize];
            w.push(x[j - 1]);
            w.extend(core::iter::repeat_n(x[i - 1], r as usize));
            p.add_term(Word::new(w), &c);
        }
        out.push((i, j, p));
    }
    Ok(out)
}

/// Generator names of the Drinfeld–Jimbo presentation. `K_i` stands for the
/// square `k_i²` and `Kb_i` for its inverse.
pub const DJ_GENERATORS: [&str; 8] = ["K1", "K2", "Kb1", "Kb2", "X1p", "X2p", "X1m", "X2m"];

#[derive(Clone, Debug)]
pub struct DjPresentation {
    pub cartan: CartanMatrix,
    pub q_dj: Exponent,
    pub table: GeneratorTable,
    pub relations: RelationSet,
}

impl DjPresentation {
    pub fn k(&self, i: usize) -> GenId {
        (i - 1) as GenId
    }

    pub fn kbar(&self, i: usize) -> GenId {
        (i + 1) as GenId
    }

    pub fn xp(&self, i: usize) -> GenId {
        (i + 3) as GenId
    }

    pub fn xm(&self, i: usize) -> GenId {
        (i + 5) as GenId
    }
}

/// Drinfeld–Jimbo relations for `a` with deformation parameter `q^q_dj`:
/// `K_i K̄_i = K̄_i K_i = 1`, `K₁K₂ = K₂K₁`,
/// `K_i X_j^± K̄_i = q_dj^{±d_i a_ij} X_j^±`,
/// `[X_i^+, X_j^−] = δ_ij (K_i − K̄_i)/(q_i − q_i^{−1})` and the q-Serre
/// relations for both signs.
pub fn dj_relations(a: &CartanMatrix, q_dj: Exponent, order: RootOrder) -> Result<DjPresentation> {
    let table = GeneratorTable::new(&DJ_GENERATORS)?;
    let mut p = DjPresentation { cartan: *a, q_dj, table, relations: RelationSet::new() };
    let one = Scalar::one();
    let mut rels = RelationSet::new();
    for i in 1..=2 {
        let (k, kb) = (p.k(i), p.kbar(i));
        rels.push(&format!("KKb{i}"), NcPoly::term(&[k, kb], one.clone()).sub(&NcPoly::one()), "cartan")?;
        rels.push(&format!("KbK{i}"), NcPoly::term(&[kb, k], one.clone()).sub(&NcPoly::one()), "cartan")?;
    }
    rels.push(
        "K1K2",
        NcPoly::term(&[p.k(1), p.k(2)], one.clone()).sub(&NcPoly::term(&[p.k(2), p.k(1)], one.clone())),
        "cartan",
    )?;
    for i in 1..=2 {
        for j in 1..=2 {
            let e = q_dj.scale(a.symmetrizer(i) * a.entry(i, j), 1).unwrap();
            for (sign, x, tag) in [(1, p.xp(j), "p"), (-1, p.xm(j), "m")] {
                let c = Scalar::q_exp(e.scale(sign, 1).unwrap(), order)?;
                let rel = NcPoly::term(&[p.k(i), x, p.kbar(i)], one.clone()).sub(&NcPoly::term(&[x], c));
                rels.push(&format!("K{i}X{j}{tag}"), rel, "cartan-action")?;
            }
        }
    }
    for i in 1..=2 {
        for j in 1..=2 {
            let mut rel = NcPoly::term(&[p.xp(i), p.xm(j)], one.clone())
                .sub(&NcPoly::term(&[p.xm(j), p.xp(i)], one.clone()));
            if i == j {
                let qi = Scalar::q_exp(q_dj.scale(a.symmetrizer(i), 1).unwrap(), order)?;
                let c = (&qi - &qi.inv()?).inv()?;
                rel = rel
                    .sub(&NcPoly::term(&[p.k(i)], c.clone()))
                    .add(&NcPoly::term(&[p.kbar(i)], c));
            }
            rels.push(&format!("comm{i}{j}"), rel, "commutator")?;
        }
    }
    for (letters, tag) in [([p.xp(1), p.xp(2)], "p"), ([p.xm(1), p.xm(2)], "m")] {
        for (i, j, rel) in serre_relations(a, letters, q_dj, order)? {
            rels.push(&format!("serre{tag}{i}{j}"), rel, "serre")?;
        }
    }
    p.relations = rels;
    Ok(p)
}

/// Reading of `E F − F E = T − U` in components:
/// `E_j F^i − F^i E_j = ±(T − U)^i_j`, or with `(T − U)^j_i` when transposed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EfConvention {
    pub negate: bool,
    pub transpose: bool,
}

pub const FROZEN_EF: EfConvention = EfConvention { negate: false, transpose: false };

pub const EF_CONVENTIONS: [EfConvention; 4] = [
    EfConvention { negate: false, transpose: false },
    EfConvention { negate: true, transpose: false },
    EfConvention { negate: false, transpose: true },
    EfConvention { negate: true, transpose: true },
];

/// Preset generators with their weights, in rewrite order.
pub const PRESET_GENERATORS: [(&str, u32); 10] =
    [("a", 2), ("b", 2), ("c", 2), ("x", 2), ("y", 2), ("z", 2), ("d", 1), ("e", 1), ("f", 1), ("g", 1)];

/// The inhomogeneous bialgebra on `T, U, E, F`.
#[derive(Clone, Debug)]
pub struct Inhomogeneous {
    pub table: GeneratorTable,
    pub relations: RelationSet,
    pub nu: Exponent,
    pub order: RootOrder,
}

type Entry = Option<GenId>;

impl Inhomogeneous {
    fn id(&self, name: &str) -> GenId {
        self.table.id(name).expect("preset generator")
    }

    /// `T^i_j`, 1-based; `None` for the structural zero.
    pub fn t(&self, i: usize, j: usize) -> Entry {
        [[Some(self.id("a")), None], [Some(self.id("b")), Some(self.id("c"))]][i - 1][j - 1]
    }

    pub fn u(&self, i: usize, j: usize) -> Entry {
        [[Some(self.id("x")), Some(self.id("y"))], [None, Some(self.id("z"))]][i - 1][j - 1]
    }

    pub fn e(&self, j: usize) -> GenId {
        [self.id("d"), self.id("e")][j - 1]
    }

    pub fn f(&self, i: usize) -> GenId {
        [self.id("f"), self.id("g")][i - 1]
    }

    /// `Δ(T) = T⊗T`, `Δ(U) = U⊗U`, `Δ(E) = E⊗T + 1⊗E`, `Δ(F) = F⊗1 + U⊗F`.
    pub fn coproduct(&self) -> Coproduct {
        let mut delta = Coproduct::new(self.table.len());
        let gen = |g: Entry| g.map_or_else(NcPoly::zero, NcPoly::generator);
        for i in 1..=2 {
            for j in 1..=2 {
                for (m, mat) in [(0, Self::t as fn(&Self, usize, usize) -> Entry), (1, Self::u)] {
                    let _ = m;
                    if let Some(g) = mat(self, i, j) {
                        let img = (1..=2).map(|k| (gen(mat(self, i, k)), gen(mat(self, k, j)))).collect();
                        delta.set(g, img);
                    }
                }
            }
        }
        for j in 1..=2 {
            let mut img: Vec<(NcPoly, NcPoly)> =
                (1..=2).map(|k| (NcPoly::generator(self.e(k)), gen(self.t(k, j)))).collect();
            img.push((NcPoly::one(), NcPoly::generator(self.e(j))));
            delta.set(self.e(j), img);
        }
        for i in 1..=2 {
            let mut img = vec![(NcPoly::generator(self.f(i)), NcPoly::one())];
            img.extend((1..=2).map(|k| (gen(self.u(i, k)), NcPoly::generator(self.f(k)))));
            delta.set(self.f(i), img);
        }
        delta
    }

    /// `ε(T) = ε(U) = 1` as matrices, `ε(E) = ε(F) = 0`.
    pub fn counit(&self) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.table.len()];
        for name in ["a", "c", "x", "z"] {
            out[self.id(name) as usize] = Scalar::one();
        }
        out
    }
}

fn mono(c: &Scalar, letters: &[Entry]) -> NcPoly {
    if c.is_zero() || letters.iter().any(Option::is_none) {
        return NcPoly::zero();
    }
    let w: Vec<GenId> = letters.iter().map(|g| g.unwrap()).collect();
    NcPoly::term(&w, c.clone())
}

fn preset_table() -> Result<GeneratorTable> {
    let mut t = GeneratorTable::default();
    for (name, w) in PRESET_GENERATORS {
        t.push_weighted(name, w)?;
    }
    Ok(t)
}

pub fn build_inhomogeneous_relations(r: &NormalizedR) -> Result<Inhomogeneous> {
    build_inhomogeneous_relations_with(r, FROZEN_EF)
}

/// All componentwise relations of the inhomogeneous bialgebra, deduplicated
/// up to scalar multiples; names are `<family>[<indices>]`.
pub fn build_inhomogeneous_relations_with(r: &NormalizedR, ef: EfConvention) -> Result<Inhomogeneous> {
    let mut p =
        Inhomogeneous { table: preset_table()?, relations: RelationSet::new(), nu: r.nu, order: r.order };
    let rr = |k: usize, l: usize, m: usize, n: usize| r.entry(k as u8, l as u8, m as u8, n as u8).clone();
    let idx = [1usize, 2];
    let mut seen: Vec<NcPoly> = Vec::new();
    let mut rels = RelationSet::new();
    let mut push = |name: String, poly: NcPoly, family: &str| -> Result<()> {
        let n = poly.normalized();
        if !n.is_zero() && !seen.contains(&n) {
            seen.push(n.clone());
            rels.push(&name, n, family)?;
        }
        Ok(())
    };
    type Mat = fn(&Inhomogeneous, usize, usize) -> Entry;
    let pairs: [(&str, Mat, Mat); 3] =
        [("RTT", Inhomogeneous::t, Inhomogeneous::t), ("RUU", Inhomogeneous::u, Inhomogeneous::u), ("RUT", Inhomogeneous::u, Inhomogeneous::t)];
    for (family, first, second) in pairs {
        for i in idx {
            for j in idx {
                for m in idx {
                    for n in idx {
                        let mut poly = NcPoly::zero();
                        for k in idx {
                            for l in idx {
                                poly = poly.add(&mono(&rr(i, j, k, l), &[first(&p, k, m), second(&p, l, n)]));
                                poly = poly.sub(&mono(&rr(k, l, m, n), &[second(&p, j, l), first(&p, i, k)]));
                            }
                        }
                        push(format!("{family}[{i}{j},{m}{n}]"), poly, family)?;
                    }
                }
            }
        }
    }
    let one = Scalar::one();
    for a in idx {
        for b in idx {
            for c in idx {
                // ET: E_a T^b_c = T^b_l E_k R^{kl}_{ac}
                let mut poly = mono(&one, &[Some(p.e(a)), p.t(b, c)]);
                // UE: U^a_b E_c = E_l U^a_k R^{kl}_{bc}
                let mut ue = mono(&one, &[p.u(a, b), Some(p.e(c))]);
                // TF: T^b_c F^a = R^{ab}_{kl} F^k T^l_c
                let mut tf = mono(&one, &[p.t(b, c), Some(p.f(a))]);
                // FU: F^b U^a_c = R^{ab}_{kl} U^k_c F^l
                let mut fu = mono(&one, &[Some(p.f(b)), p.u(a, c)]);
                for k in idx {
                    for l in idx {
                        poly = poly.sub(&mono(&rr(k, l, a, c), &[p.t(b, l), Some(p.e(k))]));
                        ue = ue.sub(&mono(&rr(k, l, b, c), &[Some(p.e(l)), p.u(a, k)]));
                        tf = tf.sub(&mono(&rr(a, b, k, l), &[Some(p.f(k)), p.t(l, c)]));
                        fu = fu.sub(&mono(&rr(a, b, k, l), &[p.u(k, c), Some(p.f(l))]));
                    }
                }
                push(format!("ET[{a},{b}{c}]"), poly, "ET")?;
                push(format!("UE[{a}{b},{c}]"), ue, "UE")?;
                push(format!("TF[{a},{b}{c}]"), tf, "TF")?;
                push(format!("FU[{a}{b},{c}]"), fu, "FU")?;
            }
        }
    }
    for i in idx {
        for j in idx {
            let (ti, tj) = if ef.transpose { (j, i) } else { (i, j) };
            let sign = if ef.negate { -Scalar::one() } else { Scalar::one() };
            let poly = mono(&one, &[Some(p.e(j)), Some(p.f(i))])
                .sub(&mono(&one, &[Some(p.f(i)), Some(p.e(j))]))
                .sub(&mono(&sign, &[p.t(ti, tj)]))
                .add(&mono(&sign, &[p.u(ti, tj)]));
            push(format!("EF[{i},{j}]"), poly, "EF")?;
        }
    }
    p.relations = rels;
    Ok(p)
}

/// Normalization `ν` at which the order-`N` relations exist, for `N = 2, 3, 4`.
pub fn known_nu(n: usize) -> Option<Exponent> {
    match n {
        2 => Exponent::new(1, 1),
        3 => Exponent::new(0, 1),
        4 => Exponent::new(-1, 3),
        _ => None,
    }
}

/// Order-`N` relations split by the number of `E₁` letters: one independent,
/// content-normalized basis per class, classes ascending.
pub fn omega_relations_by_class(basis: &[OmegaTensor], letters: [GenId; 2]) -> Vec<(usize, Vec<NcPoly>)> {
    let Some(n) = basis.first().map(OmegaTensor::slots) else { return Vec::new() };
    let mut out = Vec::new();
    for class in 0..=n {
        let rows: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|w| {
                w.components()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        let ones = multi_index(i, n).iter().filter(|&&k| k == 1).count();
                        if ones == class { c.clone() } else { Scalar::zero() }
                    })
                    .collect()
            })
            .collect();
        let mut m = Matrix::from_rows(rows);
        let pivots = m.rref();
        let polys: Vec<NcPoly> = (0..pivots.len())
            .map(|r| {
                let mut v = m.row(r).to_vec();
                let lead = v.iter().position(|c| !c.is_zero()).unwrap();
                normalize_content(&mut v, lead);
                relations_from_omega(&OmegaTensor::new(n, v), letters)
            })
            .collect();
        if !polys.is_empty() {
            out.push((class, polys));
        }
    }
    out
}

/// Adds `namē` after `name` with `name·namē = namē·name = 1`.
/// A relation spelled with generator names: `(name, [(word, coefficient)])`.
type NamedRelation = (String, Vec<(Vec<String>, Scalar)>);

fn adjoin_inverse(table: &mut Vec<(String, u32)>, rels: &mut Vec<NamedRelation>, name: &str) {
    let pos = table.iter().position(|(n, _)| n == name).unwrap();
    let w = table[pos].1;
    let bar = format!("{name}bar");
    table.insert(pos + 1, (bar.clone(), w));
    for (l, r, tag) in [(name, bar.as_str(), "r"), (bar.as_str(), name, "l")] {
        rels.push((
            format!("inv{tag}:{name}"),
            vec![(vec![l.to_string(), r.to_string()], Scalar::one()), (vec![], -Scalar::one())],
        ));
    }
}

/// Transfers relations between tables with the same generator names.
fn rename(p: &NcPoly, from: &GeneratorTable, to: &GeneratorTable) -> NcPoly {
    p.map_letters(|g| to.id(from.name(g)).expect("shared generator"))
}

/// The preset extended by `ā`, `c̄`: relations in the extended table.
#[derive(Clone, Debug)]
pub struct Extended {
    pub table: GeneratorTable,
    pub relations: RelationSet,
}

fn extend_with_inverses(p: &Inhomogeneous, inverses: &[&str]) -> Result<Extended> {
    let mut gens: Vec<(String, u32)> = PRESET_GENERATORS.iter().map(|(n, w)| (n.to_string(), *w)).collect();
    let mut extra = Vec::new();
    for name in inverses {
        adjoin_inverse(&mut gens, &mut extra, name);
    }
    let mut table = GeneratorTable::default();
    for (n, w) in &gens {
        table.push_weighted(n, *w)?;
    }
    let mut rels = RelationSet::new();
    for rel in p.relations.iter() {
        rels.push(&rel.name, rename(&rel.poly, &p.table, &table), &rel.source)?;
    }
    for (name, terms) in extra {
        let poly = NcPoly::from_terms(terms.into_iter().map(|(w, c)| {
            (Word::new(w.iter().map(|n| table.id(n).unwrap()).collect()), c)
        }));
        rels.push(&name, poly, "inverse")?;
    }
    Ok(Extended { table, relations: rels })
}

fn gen_poly(table: &GeneratorTable, names: &[&str], c: Scalar) -> NcPoly {
    let w: Vec<GenId> = names.iter().map(|n| table.id(n).expect("generator")).collect();
    NcPoly::term(&w, c)
}

/// Source algebra of the correspondence at order `N`: the preset at `ν`, the
/// order-`N` relations for `E` and `F`, inverses `ā`, `c̄`, and the
/// identification `ax = xa = 1`, `cz = zc = 1`.
pub fn dj_source(n: usize, nu: Exponent, order: RootOrder) -> Result<Extended> {
    let preset = build_inhomogeneous_relations(&r_matrix(nu, order)?)?;
    let mut ext = extend_with_inverses(&preset, &["a", "c"])?;
    let t = ext.table.clone();
    let basis = solve_omega(n, nu, order)?;
    let e_letters = [t.id("d").unwrap(), t.id("e").unwrap()];
    let f_letters = [t.id("f").unwrap(), t.id("g").unwrap()];
    for (k, w) in basis.iter().enumerate() {
        ext.relations.push(&format!("omegaE[{k}]"), relations_from_omega(w, e_letters), "omega")?;
        ext.relations.push(&format!("omegaF[{k}]"), relations_from_omega(w, f_letters), "omega")?;
    }
    for (l, r) in [("a", "x"), ("x", "a"), ("c", "z"), ("z", "c")] {
        ext.relations.push(
            &format!("ident:{l}{r}"),
            gen_poly(&t, &[l, r], Scalar::one()).sub(&NcPoly::one()),
            "identification",
        )?;
    }
    Ok(ext)
}

/// Homomorphism check of the correspondence from the Drinfeld–Jimbo
/// presentation into the order-`N` algebra, at the known `ν`.
pub fn verify_dj_image(n: usize, bound: usize, order: RootOrder) -> Result<Report> {
    let nu = known_nu(n).ok_or_else(|| Error::Input(format!("no known normalization for N = {n}")))?;
    verify_dj_image_at(n, nu, bound, order)
}

/// Images `K₂ → c`, `K̄₂ → c̄`, `K₁ → a c̄`, `K̄₁ → c ā`, `X₁⁺ → λ₁ c̄ b`,
/// `X₂⁺ → λ₂ e`, `X₁⁻ → λ₃ y z̄ = λ₃ y c`, `X₂⁻ → λ₄ g` with `λ₁ = λ₂ = 1`.
/// The deformation parameter is read off `K₂ X₂⁺ K̄₂` and `λ₃`, `λ₄` off the
/// diagonal commutators; every relation is then checked at `bound`.
pub fn verify_dj_image_at(n: usize, nu: Exponent, bound: usize, order: RootOrder) -> Result<Report> {
    verify_dj_image_against(n, nu, &CartanMatrix::for_order(n)?, bound, order)
}

/// As [`verify_dj_image_at`] with an arbitrary target Cartan matrix.
pub fn verify_dj_image_against(
    n: usize,
    nu: Exponent,
    cartan: &CartanMatrix,
    bound: usize,
    order: RootOrder,
) -> Result<Report> {
    let cartan = *cartan;
    let mut report = Report::new(&format!("dj-image N={n}"));
    report.note("cartan", cartan.to_string());
    report.note("nu", nu.to_string());
    let src = dj_source(n, nu, order)?;
    let sys = RewriteSystem::from_relations(src.table.clone(), &src.relations.polys())?.complete(bound)?;
    let t = &src.table;
    let one = Scalar::one();

    let mut images: [NcPoly; 8] = [
        gen_poly(t, &["a", "cbar"], one.clone()),
        gen_poly(t, &["c"], one.clone()),
        gen_poly(t, &["c", "abar"], one.clone()),
        gen_poly(t, &["cbar"], one.clone()),
        gen_poly(t, &["cbar", "b"], one.clone()),
        gen_poly(t, &["e"], one.clone()),
        gen_poly(t, &["y", "c"], one.clone()),
        gen_poly(t, &["g"], one.clone()),
    ];

    // deformation parameter from K2 X2+ K̄2 = q_dj^{2} X2+
    let conj = sys.normal_form(&images[1].mul(&images[5]).mul(&images[3]));
    let e_nf = sys.normal_form(&images[5]);
    let q_dj = ratio(&conj, &e_nf).and_then(|s| s.as_q_power()).and_then(|e| e.scale(1, 2));
    let Some(q_dj) = q_dj else {
        report.push("deformation-parameter", Status::Fail, Some(conj.display(t).to_string()));
        return Ok(report);
    };
    if q_dj.units(order).is_err() {
        report.push("deformation-parameter", Status::Fail, Some(format!("q^({q_dj}) outside root order")));
        return Ok(report);
    }
    report.note("q_dj", format!("q^({q_dj})"));

    let pres = dj_relations(&cartan, q_dj, order)?;
    let mut lambdas = [one.clone(), one.clone(), one.clone(), one.clone()];
    for i in 1..=2 {
        let map = dj_map(&images);
        let lhs = map.apply(
            &NcPoly::term(&[pres.xp(i), pres.xm(i)], one.clone())
                .sub(&NcPoly::term(&[pres.xm(i), pres.xp(i)], one.clone())),
            &pres.table,
            Some(&sys),
        )?;
        let qi = Scalar::q_exp(q_dj.scale(cartan.symmetrizer(i), 1).unwrap(), order)?;
        let c = (&qi - &qi.inv()?).inv()?;
        let rhs = sys.normal_form(&images[i - 1].scale(&c).sub(&images[i + 1].scale(&c)));
        match ratio(&rhs, &lhs) {
            Some(mu) => {
                images[5 + i] = images[5 + i].scale(&mu);
                lambdas[1 + i] = mu;
            }
            None => {
                report.push(&format!("normalization{i}"), Status::Fail, Some(lhs.display(t).to_string()));
                return Ok(report);
            }
        }
    }
    for (k, l) in lambdas.iter().enumerate() {
        report.note(&format!("lambda{}", k + 1), l.to_string());
    }
    for (g, img) in images.iter().enumerate() {
        let nf = sys.normal_form(img);
        report.check(&format!("nonzero:{}", DJ_GENERATORS[g]), !nf.is_zero(), || "image reduces to 0".to_string());
    }
    let map = dj_map(&images);
    for rel in pres.relations.iter() {
        let img = map.apply(&rel.poly, &pres.table, Some(&sys))?;
        report.push_membership(&rel.name, &sys.membership_of(&img), t);
    }
    Ok(report)
}

fn dj_map(images: &[NcPoly; 8]) -> AlgebraMap {
    let mut map = AlgebraMap::new(8);
    for (g, img) in images.iter().enumerate() {
        map.set(g as GenId, img.clone());
    }
    map
}

/// `μ` with `μ·den = num`, if it exists and `den ≠ 0`.
fn ratio(num: &NcPoly, den: &NcPoly) -> Option<Scalar> {
    let (w, c) = den.leading()?;
    let mu = num.coefficient(w).try_div(c).ok()?;
    if den.scale(&mu) == *num {
        Some(mu)
    } else {
        None
    }
}

/// Generators allowed in the dependency system besides `c̄`.
pub const DEPENDENCY_LETTERS: [&str; 4] = ["b", "c", "d", "e"];

/// Bounded check that every order-`N` relation of `E` other than the one
/// with a single `E₁` follows from the preset relations among `b, c, d, e`,
/// the inverse `c̄` and that single-`E₁` relation.
pub fn check_dependency(n: usize, bound: usize, order: RootOrder) -> Result<Report> {
    check_dependency_with(n, bound, order, true)
}

/// As [`check_dependency`]; `keep_final = false` drops the single-`E₁`
/// relation from the system (ablation).
pub fn check_dependency_with(n: usize, bound: usize, order: RootOrder, keep_final: bool) -> Result<Report> {
    let nu = known_nu(n).ok_or_else(|| Error::Input(format!("no known normalization for N = {n}")))?;
    let preset = build_inhomogeneous_relations(&r_matrix(nu, order)?)?;
    let ext = extend_with_inverses(&preset, &["c"])?;
    let t = &ext.table;
    let allowed: BTreeSet<GenId> =
        DEPENDENCY_LETTERS.iter().chain(["cbar"].iter()).map(|n| t.id(n).unwrap()).collect();
    let letters = [t.id("d").unwrap(), t.id("e").unwrap()];
    let classes = omega_relations_by_class(&solve_omega(n, nu, order)?, letters);
    let mut report = Report::new(&format!("dependency N={n}"));
    let mut used = Vec::new();
    let mut polys = Vec::new();
    for rel in ext.relations.iter() {
        if rel.poly.generators().is_subset(&allowed) {
            used.push(rel.name.clone());
            polys.push(rel.poly.clone());
        }
    }
    let mut targets = Vec::new();
    for (class, rels) in &classes {
        for (k, p) in rels.iter().enumerate() {
            if *class == 1 {
                if keep_final {
                    used.push(format!("final[{k}]"));
                    polys.push(p.clone());
                }
            } else {
                targets.push((format!("class{class}[{k}]"), p.clone()));
            }
        }
    }
    report.note("system", used.join(", "));
    let sys = RewriteSystem::from_relations(t.clone(), &polys)?.complete(bound)?;
    for (name, p) in targets {
        report.note(&format!("target:{name}"), p.display(t).to_string());
        let m = sys.membership_of(&p);
        report.push_membership(&name, &m, t);
    }
    Ok(report)
}

/// Runs the bialgebra check on the preset at `ν`, optionally with the
/// order-`N` relations for `E` and `F` added.
pub fn check_preset_bialgebra(nu: Exponent, with_order: Option<usize>, ef: EfConvention, bound: usize, order: RootOrder) -> Result<Report> {
    let preset = build_inhomogeneous_relations_with(&r_matrix(nu, order)?, ef)?;
    let mut rels = preset.relations.clone();
    if let Some(n) = with_order {
        let basis = solve_omega(n, nu, order)?;
        let (e, f) = ([preset.e(1), preset.e(2)], [preset.f(1), preset.f(2)]);
        for (k, w) in basis.iter().enumerate() {
            rels.push(&format!("omegaE[{k}]"), relations_from_omega(w, e), "omega")?;
            rels.push(&format!("omegaF[{k}]"), relations_from_omega(w, f), "omega")?;
        }
    }
    Ok(crate::freealg::check_bialgebra(&preset.table, &rels, &preset.coproduct(), &preset.counit(), bound)?)
}

/// True when a report entry is a proven membership.
pub fn is_member(m: &Membership) -> bool {
    m.is_member()
}
