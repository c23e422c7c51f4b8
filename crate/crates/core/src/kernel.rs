//! Partial abstract kernels `(A, G, Θ)`, their factor sets and obstruction
//! classes in `H³`, crossed products and classification of extensions by
//! `H²`.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::action::{
    restrict_to_center, tpa_equivalent, twist_by_cochain, validate_tpa, PartialAction, TpaParts,
    TwistedPartialAction,
};
use crate::cohomology::{build_module, Cochain, CohomologyGroup, PartialGModule};
use crate::error::{Error, Result};
use crate::multiplier::Multiplier;
use crate::semigroup::{
    analyze_inverse, ideal_closure, isomorphisms_filtered, validate_semigroup, Carrier, CarrierMap, Clifford,
    FiniteGroup, FiniteSemigroup, Ideal, NONE,
};
use crate::sigma::{compose_partial, sigma_quotient, similar, verify_partial_hom, PartialHom, PartialIso};
use crate::Session;

/// A Clifford semigroup `A` with a unital partial homomorphism `G → ς(A)`.
#[derive(Clone, Debug)]
pub struct AbstractKernel {
    algebra: Arc<Clifford>,
    hom: PartialHom,
}

impl AbstractKernel {
    pub fn new(session: &Session, algebra: Arc<Clifford>, group: &FiniteGroup, reps: Vec<PartialIso>) -> Result<Self> {
        let hom = verify_partial_hom(session, &algebra, group, reps)?;
        Ok(AbstractKernel { algebra, hom })
    }

    /// The kernel induced by a twisted partial action.
    pub fn of_tpa(session: &Session, t: &TwistedPartialAction) -> Result<Self> {
        Self::new(session, t.algebra().clone(), t.group(), t.thetas().to_vec())
    }

    pub fn algebra(&self) -> &Arc<Clifford> {
        &self.algebra
    }

    pub fn group(&self) -> &FiniteGroup {
        self.hom.group()
    }

    pub fn hom(&self) -> &PartialHom {
        &self.hom
    }

    pub fn rep(&self, g: usize) -> &PartialIso {
        self.hom.rep(g)
    }

    pub fn domain(&self, g: usize) -> &Ideal {
        self.hom.domain(g)
    }

    pub fn center_action(&self) -> Result<PartialAction> {
        restrict_to_center(&self.algebra, self.group(), self.hom.reps())
    }

    /// `C(A)` as a partial `G`-module.
    pub fn module(&self, session: &Session) -> Result<PartialGModule> {
        build_module(session, self.center_action()?)
    }

    /// Same algebra, same group and `~`-equal assignments.
    pub fn same_as(&self, session: &Session, other: &AbstractKernel) -> Result<bool> {
        if **self.algebra.semigroup() != **other.algebra.semigroup() || self.group() != other.group() {
            return Ok(false);
        }
        for g in self.group().elements() {
            if similar(session, self.rep(g), other.rep(g))?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// How a factor set is picked when several units solve the same slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    /// The least solution in unit order.
    Least,
    /// A uniformly random solution per slot from a seeded generator.
    Seeded(u64),
}

/// `w_{g,h} ∈ U(M(D_g D_{gh}))` with `θ_g θ_h = μ(w_{g,h}) θ_{gh}` on
/// `D_{h⁻¹} D_{(gh)⁻¹}`, and `w_{1,g} = w_{g,1} = id`. Indexed `g * n + h`.
pub fn solve_factor_set(session: &Session, k: &AbstractKernel, selection: Selection) -> Result<Vec<Multiplier>> {
    let g = k.group();
    let n = g.order();
    let e = g.identity();
    let mut rng = match selection {
        Selection::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Selection::Least => None,
    };
    let mut out = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let xy = g.mul(x, y);
            let target = k.domain(x).intersection(k.domain(xy))?;
            if x == e || y == e {
                out.push(Multiplier::identity(target.carrier()));
                continue;
            }
            let psi = compose_partial(k.rep(x), k.rep(y))?;
            let src = k.domain(g.inv(y)).intersection(k.domain(g.inv(xy)))?;
            if psi.dom() != &src || psi.ran() != &target {
                return Err(Error::NoConjugator { g: x, h: y });
            }
            let phi = k.rep(xy).restrict(&src)?;
            if phi.ran() != &target {
                return Err(Error::NoConjugator { g: x, h: y });
            }
            let monoid = session.monoid(target.carrier())?;
            let mut solutions = Vec::new();
            for i in 0..monoid.units().len() {
                let w = monoid.unit(i);
                let wi = w.invert().expect("unit");
                if src
                    .members()
                    .iter()
                    .all(|&s| psi.apply(s) == wi.right(w.left(phi.apply(s))))
                {
                    solutions.push(w.clone());
                    if rng.is_none() {
                        break;
                    }
                }
            }
            let pick = match rng.as_mut() {
                Some(r) => solutions.choose(r).cloned(),
                None => solutions.into_iter().next(),
            };
            out.push(pick.ok_or(Error::NoConjugator { g: x, h: y })?);
        }
    }
    Ok(out)
}

/// The obstruction `β(g,h,k) = (w_{h,k}^{θ_g} w_{g,hk})(w_{g,h} w_{gh,k})⁻¹`
/// on `D_g D_{gh} D_{ghk}`, restricted to the center. Fails with
/// `NotCentral` when some value is not central and `NotCocycle` when
/// `δ³β ≠ 1`.
pub fn obstruction_cocycle(k: &AbstractKernel, module: &PartialGModule, w: &[Multiplier]) -> Result<Cochain> {
    let g = k.group();
    let n = g.order();
    if w.len() != n * n {
        return Err(Error::ShapeMismatch(format!("{} factors for a group of order {n}", w.len())));
    }
    let beta = module.cochain_from_fn(3, |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let (xy, yz) = (g.mul(x, y), g.mul(y, z));
        let xyz = g.mul(xy, z);
        let i = k.domain(x).intersection(k.domain(xy))?.intersection(k.domain(xyz))?;
        let j = k.domain(g.inv(x)).intersection(k.domain(y))?.intersection(k.domain(yz))?;
        let theta = k.rep(x).iso().restrict(j.carrier())?;
        if theta.ran() != i.carrier() {
            return Err(Error::Inconsistent(format!("θ_{x} does not carry the triple domain at {t:?}")));
        }
        let ri = |m: &Multiplier| m.restrict(i.carrier());
        let lhs = w[y * n + z].restrict(j.carrier())?.transport(&theta)?.compose(&ri(&w[x * n + yz])?)?;
        let rhs = ri(&w[x * n + y])?.compose(&ri(&w[xy * n + z])?)?;
        let b = lhs.compose(&rhs.invert().ok_or(Error::NotInvertible)?)?;
        if !b.is_central() {
            return Err(Error::NotCentral { args: t.to_vec() });
        }
        b.restrict(module.slot_carrier(t))
    })?;
    let d = module.coboundary(&beta)?;
    if let Some(s) = d.values().iter().position(|&v| v != 0) {
        return Err(Error::NotCocycle { args: module.tuple(4, s) });
    }
    Ok(beta)
}

#[derive(Debug)]
pub struct Obstruction {
    pub factor_set: Vec<Multiplier>,
    pub cocycle: Cochain,
    pub h3: CohomologyGroup,
    /// Index into `h3`; 0 is the trivial class.
    pub class: usize,
}

impl Obstruction {
    pub fn is_trivial(&self) -> bool {
        self.class == 0
    }
}

pub fn obstruction(
    session: &Session,
    k: &AbstractKernel,
    module: &PartialGModule,
    selection: Selection,
) -> Result<Obstruction> {
    let factor_set = solve_factor_set(session, k, selection)?;
    let cocycle = obstruction_cocycle(k, module, &factor_set)?;
    let h3 = module.cohomology(session, 3)?;
    let class = h3
        .class_of(&cocycle)
        .ok_or_else(|| Error::Inconsistent("obstruction missing from Z³".into()))?;
    Ok(Obstruction {
        factor_set,
        cocycle,
        h3,
        class,
    })
}

/// Corrects the factor set by a normalized `v` with `δ²v = β` so that the
/// result is a twisted partial action; `Obstructed` when `[β] ≠ 0`.
pub fn unobstructed_action(
    session: &Session,
    k: &AbstractKernel,
    module: &PartialGModule,
    obs: &Obstruction,
) -> Result<TwistedPartialAction> {
    let b3 = module.coboundaries(session, 3)?;
    let v = b3.preimage(&obs.cocycle).ok_or(Error::Obstructed { class: obs.class })?;
    let v = module.normalize_2cochain(v)?;
    // replacing w by u·w multiplies β by δ²u
    let twist = twist_by_cochain(module, &module.inv(&v), k.algebra(), k.group(), &obs.factor_set)?;
    let n = k.group().order();
    let parts = TpaParts {
        algebra: k.algebra().clone(),
        group: k.group().clone(),
        domains: (0..n).map(|g| k.domain(g).clone()).collect(),
        theta: k.hom().reps().to_vec(),
        twist,
    };
    validate_tpa(parts).map_err(|e| Error::Inconsistent(format!("corrected factor set fails: {e}")))
}

/// The crossed product of the corrected action, after checking it is an
/// inverse semigroup that recovers the kernel. `Obstructed` when `[β] ≠ 0`.
pub fn extension_if_unobstructed(
    session: &Session,
    k: &AbstractKernel,
    module: &PartialGModule,
) -> Result<(TwistedPartialAction, Extension)> {
    let obs = obstruction(session, k, module, Selection::Least)?;
    let t = unobstructed_action(session, k, module, &obs)?;
    let ext = crossed_product(&t)?;
    check_kernel_recovery(session, &t, &ext)?;
    Ok((t, ext))
}

/// How `(a, g)(b, h)` pulls `a` back into `D_{g⁻¹}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PullBack {
    /// `θ_g⁻¹(a)`, the inverse of the map `θ_g`.
    InverseMap,
    /// `θ_{g⁻¹}(a)`, the map attached to the inverse group element. Differs
    /// from the inverse map when `w_{g,g⁻¹}` acts non-trivially.
    InverseElement,
}

/// An extension `A → U → G` built as a crossed product.
#[derive(Clone, Debug)]
pub struct Extension {
    pub total: Arc<FiniteSemigroup>,
    /// `(a, g)` for each element of `U`, ordered by `g` then `a`.
    pub pairs: Vec<(usize, usize)>,
    /// `i(a) = (a, 1)`, indexed by elements of `A`.
    pub i: Vec<usize>,
    /// `j(a, g) = g`, indexed by elements of `U`.
    pub j: Vec<usize>,
}

/// `U = {(a, g) : a ∈ D_g}` with `(a,g)(b,h) = ((θ_g(θ_g⁻¹(a) b)) w_{g,h}, gh)`.
pub fn crossed_product(t: &TwistedPartialAction) -> Result<Extension> {
    crossed_product_with(t, PullBack::InverseMap)
}

pub fn crossed_product_with(t: &TwistedPartialAction, pull: PullBack) -> Result<Extension> {
    let g = t.group();
    let n = g.order();
    let a = t.algebra();
    let mut pairs = Vec::new();
    let mut index = vec![vec![NONE; a.order()]; n];
    for x in 0..n {
        for &el in t.domain(x).members() {
            index[x][el] = pairs.len();
            pairs.push((el, x));
        }
    }
    let mut rows = vec![vec![0; pairs.len()]; pairs.len()];
    for (p, &(u, x)) in pairs.iter().enumerate() {
        let back = match pull {
            PullBack::InverseMap => t.theta(x).apply_inverse(u),
            PullBack::InverseElement => t.theta(g.inv(x)).apply(u),
        };
        for (q, &(v, y)) in pairs.iter().enumerate() {
            let inner = a.mul(back, v);
            let c = t.twist(x, y).right(t.theta(x).apply(inner));
            let xy = g.mul(x, y);
            let r = index[xy].get(c).copied().unwrap_or(NONE);
            if r == NONE {
                return Err(Error::Inconsistent(format!("product of {p} and {q} leaves U")));
            }
            rows[p][q] = r;
        }
    }
    let total = validate_semigroup(&rows).map_err(|e| match e {
        Error::NonAssociative { s, t, u } => Error::AssociativityFailure { witness: vec![s, t, u] },
        other => other,
    })?;
    let e = g.identity();
    let i = (0..a.order()).map(|el| index[e][el]).collect();
    let j = pairs.iter().map(|p| p.1).collect();
    Ok(Extension {
        total: Arc::new(total),
        pairs,
        i,
        j,
    })
}

/// Checks that `U` is an inverse semigroup, `j` is a surjective morphism
/// onto `G`, and that conjugation by each `u` over `g` restricted to `A`
/// recovers `θ_g` up to `~` on `u⁻¹uA`, with the ranges generating `D_g`.
pub fn check_kernel_recovery(session: &Session, t: &TwistedPartialAction, ext: &Extension) -> Result<()> {
    let u = &ext.total;
    let g = t.group();
    let parent = t.algebra().semigroup();
    let fail = |m: String| Error::Inconsistent(m);
    let inv = analyze_inverse(u).map_err(|e| fail(format!("total semigroup is not inverse: {e}")))?.inverse;
    for p in 0..u.order() {
        for q in 0..u.order() {
            if ext.j[u.mul(p, q)] != g.mul(ext.j[p], ext.j[q]) {
                return Err(fail(format!("j fails to be a morphism at ({p},{q})")));
            }
        }
    }
    let back = |p: usize| -> Result<usize> {
        let (a, x) = ext.pairs[p];
        if x != g.identity() {
            return Err(fail(format!("{p} is outside i(A)")));
        }
        Ok(a)
    };
    for x in g.elements() {
        let mut ranges = Vec::new();
        let over: Vec<usize> = (0..u.order()).filter(|&p| ext.j[p] == x).collect();
        if over.is_empty() {
            return Err(fail(format!("j misses {x}")));
        }
        for p in over {
            let e = back(u.mul(inv[p], p))?;
            let f = back(u.mul(p, inv[p]))?;
            ranges.push(f);
            let ea = Ideal::new(parent, (0..parent.order()).map(|s| parent.mul(e, s)))?;
            let fa = Ideal::new(parent, (0..parent.order()).map(|s| parent.mul(f, s)))?;
            let mut map = vec![NONE; parent.order()];
            for &s in ea.members() {
                map[s] = back(u.mul(u.mul(p, ext.i[s]), inv[p]))?;
            }
            let nu = PartialIso::new(ea.clone(), fa, &map)
                .map_err(|err| fail(format!("conjugation by {p} is not an isomorphism: {err}")))?;
            let theta = t.theta(x).restrict(&ea)?;
            if similar(session, &nu, &theta)?.is_none() {
                return Err(fail(format!("conjugation by {p} is not similar to θ_{x}")));
            }
        }
        if ideal_closure(parent, &ranges)? != *t.domain(x) {
            return Err(fail(format!("ranges over {x} do not generate D_{x}")));
        }
    }
    Ok(())
}

/// An isomorphism `U₁ → U₂` commuting with `i` and `j`, if any.
pub fn extensions_equivalent(e1: &Extension, e2: &Extension) -> Option<Vec<usize>> {
    if e1.i.len() != e2.i.len() {
        return None;
    }
    let mut from_a = vec![NONE; e1.total.order()];
    for (a, &p) in e1.i.iter().enumerate() {
        if p != NONE {
            from_a[p] = a;
        }
    }
    let allowed = |p: usize, q: usize| {
        e1.j[p] == e2.j[q] && (from_a[p] == NONE || e2.i[from_a[p]] == q)
    };
    isomorphisms_filtered(&Carrier::full(&e1.total), &Carrier::full(&e2.total), allowed, Some(1))
        .into_iter()
        .next()
}

#[derive(Debug)]
pub struct ClassifiedExtension {
    pub class: usize,
    pub cocycle: Cochain,
    pub action: TwistedPartialAction,
    pub extension: Extension,
}

#[derive(Debug)]
pub struct Classification {
    pub h2: CohomologyGroup,
    pub extensions: Vec<ClassifiedExtension>,
}

/// One extension per class of `H²`, obtained by twisting an unobstructed
/// action by a normalized class representative. Distinct classes are
/// checked to give inequivalent actions, and a second representative of
/// each class an equivalent one.
pub fn classify_extensions(session: &Session, k: &AbstractKernel, module: &PartialGModule) -> Result<Classification> {
    let obs = obstruction(session, k, module, Selection::Least)?;
    let base = unobstructed_action(session, k, module, &obs)?;
    let h2 = module.cohomology(session, 2)?;
    let b2 = module.coboundaries(session, 2)?.elements();
    let mut extensions: Vec<ClassifiedExtension> = Vec::new();
    for (class, z) in h2.representatives.iter().enumerate() {
        let twisted = |c: &Cochain| -> Result<TwistedPartialAction> {
            let v = module.normalize_2cochain(c)?;
            let mut parts = base.parts().clone();
            parts.twist = twist_by_cochain(module, &v, k.algebra(), k.group(), &parts.twist)?;
            validate_tpa(parts)
        };
        let action = twisted(z)?;
        let extension = crossed_product(&action)?;
        check_kernel_recovery(session, &action, &extension)?;
        if let Some(b) = b2.iter().find(|b| !module.is_identity(b)) {
            let other = twisted(&module.mul(z, b)?)?;
            if tpa_equivalent(session, &action, &other)?.is_none() {
                return Err(Error::Inconsistent(format!("cohomologous twists in class {class} are inequivalent")));
            }
        }
        for prev in &extensions {
            if tpa_equivalent(session, &prev.action, &action)?.is_some() {
                return Err(Error::Inconsistent(format!(
                    "classes {} and {class} give equivalent actions",
                    prev.class
                )));
            }
        }
        extensions.push(ClassifiedExtension {
            class,
            cocycle: z.clone(),
            action,
            extension,
        });
    }
    Ok(Classification { h2, extensions })
}

#[derive(Debug)]
pub enum SurveyOutcome {
    /// Not a unital partial homomorphism, or no factor set.
    Rejected(Error),
    Obstructed { class: usize, h3_order: usize },
    Extendable { h2_order: usize, h3_order: usize },
    Failed(Error),
}

#[derive(Debug)]
pub struct SurveyEntry {
    /// Class index in the quotient of `Σ(A)` for each group element.
    pub assignment: Vec<usize>,
    pub outcome: SurveyOutcome,
}

/// Every assignment `G → ς(A)` with the identity sent to the identity class,
/// tested as a kernel. The number of assignments is capped.
pub fn survey(session: &Session, algebra: &Arc<Clifford>, group: &FiniteGroup) -> Result<Vec<SurveyEntry>> {
    let q = sigma_quotient(session, algebra)?;
    let n = group.order();
    let c = q.classes.len() as u64;
    let count = c.checked_pow((n - 1) as u32).unwrap_or(u64::MAX);
    session.note(|u| u.kernels = u.kernels.max(count));
    let cap = session.caps().kernels;
    if count > cap {
        return Err(Error::CapExceeded {
            what: "kernel assignments".into(),
            count,
            cap,
        });
    }
    let e = group.identity();
    let mut out = Vec::new();
    for code in 0..count {
        let mut rest = code;
        let mut assignment = vec![q.identity; n];
        for x in (0..n).rev() {
            if x != e {
                assignment[x] = (rest % c) as usize;
                rest /= c;
            }
        }
        let reps: Vec<PartialIso> = assignment
            .iter()
            .map(|&k| q.classes[k].representative().clone())
            .collect();
        let outcome = match AbstractKernel::new(session, algebra.clone(), group, reps) {
            Err(err) => SurveyOutcome::Rejected(err),
            Ok(k) => survey_one(session, &k).unwrap_or_else(|err| match err {
                Error::NoConjugator { .. } => SurveyOutcome::Rejected(err),
                other => SurveyOutcome::Failed(other),
            }),
        };
        out.push(SurveyEntry { assignment, outcome });
    }
    Ok(out)
}

fn survey_one(session: &Session, k: &AbstractKernel) -> Result<SurveyOutcome> {
    let module = k.module(session)?;
    let obs = obstruction(session, k, &module, Selection::Least)?;
    let h3_order = obs.h3.order();
    if !obs.is_trivial() {
        return Ok(SurveyOutcome::Obstructed {
            class: obs.class,
            h3_order,
        });
    }
    unobstructed_action(session, k, &module, &obs)?;
    Ok(SurveyOutcome::Extendable {
        h2_order: module.cohomology(session, 2)?.order(),
        h3_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::TpaParts;
    use crate::catalog;
    use crate::semigroup::are_isomorphic;

    fn kernel_on(s: FiniteSemigroup, g: FiniteGroup, maps: &[Vec<usize>]) -> (Session, AbstractKernel) {
        let session = Session::default();
        let a = Arc::new(Clifford::new(Arc::new(s)).unwrap());
        let w = a.whole();
        let reps = maps.iter().map(|m| PartialIso::new(w.clone(), w.clone(), m).unwrap()).collect();
        let k = AbstractKernel::new(&session, a, &g, reps).unwrap();
        (session, k)
    }

    #[test]
    fn z2_by_z2_gives_z4_and_klein() {
        let (session, k) = kernel_on(catalog::cyclic(2), catalog::group(catalog::cyclic(2)), &[vec![0, 1], vec![0, 1]]);
        let module = k.module(&session).unwrap();
        let c = classify_extensions(&session, &k, &module).unwrap();
        assert_eq!(c.h2.order(), 2);
        let totals: Vec<_> = c.extensions.iter().map(|e| e.extension.total.clone()).collect();
        let z4 = Arc::new(catalog::cyclic(4));
        let v4 = Arc::new(catalog::klein());
        assert!(totals.iter().any(|t| are_isomorphic(t, &z4)));
        assert!(totals.iter().any(|t| are_isomorphic(t, &v4)));
        assert!(extensions_equivalent(&c.extensions[0].extension, &c.extensions[1].extension).is_none());
        assert!(extensions_equivalent(&c.extensions[0].extension, &c.extensions[0].extension).is_some());
    }

    #[test]
    fn z2_inverting_z3_has_one_extension() {
        let (session, k) =
            kernel_on(catalog::cyclic(3), catalog::group(catalog::cyclic(2)), &[vec![0, 1, 2], vec![0, 2, 1]]);
        let module = k.module(&session).unwrap();
        let c = classify_extensions(&session, &k, &module).unwrap();
        assert_eq!(c.extensions.len(), 1);
        assert!(are_isomorphic(&c.extensions[0].extension.total, &Arc::new(catalog::s3())));
    }

    #[test]
    fn seeded_factor_sets_give_cohomologous_obstructions() {
        // Z/2 acting on S3⁰ by conjugation with a transposition: units of
        // M(S3⁰) give several admissible w_{g,g}
        let s3z = catalog::s3_with_zero();
        let conj: Vec<usize> = {
            let s = &s3z;
            let t = 4; // a transposition of S3, shifted by the adjoined zero
            (0..s.order()).map(|x| s.mul(s.mul(t, x), t)).collect()
        };
        let (session, k) = kernel_on(s3z, catalog::group(catalog::cyclic(2)), &[(0..7).collect(), conj]);
        let module = k.module(&session).unwrap();
        let base = obstruction(&session, &k, &module, Selection::Least).unwrap();
        for seed in 0..3 {
            let o = obstruction(&session, &k, &module, Selection::Seeded(seed)).unwrap();
            assert!(module.cohomologous(&session, &base.cocycle, &o.cocycle).unwrap().is_some());
            assert_eq!(o.class, base.class);
        }
    }

    #[test]
    fn survey_of_k3_under_z2() {
        let session = Session::default();
        let a = Arc::new(Clifford::new(Arc::new(catalog::k3())).unwrap());
        let entries = survey(&session, &a, &catalog::group(catalog::cyclic(2))).unwrap();
        assert_eq!(entries.len(), 2);
        assert!(entries
            .iter()
            .all(|e| matches!(e.outcome, SurveyOutcome::Extendable { .. } | SurveyOutcome::Rejected(_))));
    }

    #[test]
    fn crossed_product_of_untwisted_partial_action_is_inverse() {
        // Z/2 acting partially on K3 with D_g = {0}
        let session = Session::default();
        let s = Arc::new(catalog::k3());
        let a = Arc::new(Clifford::new(s.clone()).unwrap());
        let zero = Ideal::new(&s, [0]).unwrap();
        let theta = vec![PartialIso::identity(&a.whole()), PartialIso::identity(&zero)];
        let t = validate_tpa(TpaParts::untwisted(a, catalog::group(catalog::cyclic(2)), theta).unwrap()).unwrap();
        let ext = crossed_product(&t).unwrap();
        assert_eq!(ext.total.order(), 4);
        check_kernel_recovery(&session, &t, &ext).unwrap();
    }

    #[test]
    fn inverse_element_pull_back_breaks_on_non_central_twist() {
        let (_, parts) = catalog::tpa_corpus()
            .into_iter()
            .find(|(n, _)| *n == "Z2 conjugating S3^0, twisted")
            .unwrap();
        let t = validate_tpa(parts).unwrap();
        assert_eq!(crossed_product(&t).unwrap().total.order(), 14);
        assert!(matches!(
            crossed_product_with(&t, PullBack::InverseElement),
            Err(Error::AssociativityFailure { .. })
        ));
    }
}
