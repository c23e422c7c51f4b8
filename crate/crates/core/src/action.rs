//! Twisted partial actions `(θ, w)` of a finite group on a Clifford semigroup,
//! plain partial actions, and equivalence of twisted partial actions.
//!
//! Twists act on elements from the right: `a·w` is `w.right(a)`.

use std::sync::Arc;

use crate::cohomology::{Cochain, PartialGModule};
use crate::error::{Error, Result};
use crate::multiplier::{extend_central, Multiplier};
use crate::semigroup::{Carrier, CarrierMap, Clifford, FiniteGroup, Ideal, Isomorphism};
use crate::sigma::PartialIso;
use crate::Session;

/// Unvalidated components of a twisted partial action. `twist[g * n + h]`
/// is `w_{g,h}`, a multiplier of `D_g D_{gh}`.
#[derive(Clone, Debug)]
pub struct TpaParts {
    pub algebra: Arc<Clifford>,
    pub group: FiniteGroup,
    pub domains: Vec<Ideal>,
    pub theta: Vec<PartialIso>,
    pub twist: Vec<Multiplier>,
}

impl TpaParts {
    /// Untwisted parts: every `w_{g,h}` is the identity of `D_g D_{gh}`.
    pub fn untwisted(algebra: Arc<Clifford>, group: FiniteGroup, theta: Vec<PartialIso>) -> Result<Self> {
        let n = group.order();
        if theta.len() != n {
            return Err(Error::ShapeMismatch(format!("{} maps for a group of order {n}", theta.len())));
        }
        let domains: Vec<Ideal> = theta.iter().map(|t| t.ran().clone()).collect();
        let mut twist = Vec::with_capacity(n * n);
        for g in 0..n {
            for h in 0..n {
                let d = domains[g].intersection(&domains[group.mul(g, h)])?;
                twist.push(Multiplier::identity(d.carrier()));
            }
        }
        Ok(TpaParts {
            algebra,
            group,
            domains,
            theta,
            twist,
        })
    }
}

#[derive(Clone, Debug)]
pub struct TwistedPartialAction {
    parts: TpaParts,
}

fn tpa(axiom: &str, witness: Vec<usize>) -> Error {
    Error::TpaViolation {
        axiom: axiom.into(),
        witness,
    }
}

/// Checks TPA1–TPA6 pointwise and reports the first failing instance.
pub fn validate_tpa(parts: TpaParts) -> Result<TwistedPartialAction> {
    let g = &parts.group;
    let n = g.order();
    let a = &parts.algebra;
    if parts.domains.len() != n || parts.theta.len() != n || parts.twist.len() != n * n {
        return Err(Error::ShapeMismatch("component counts do not match the group order".into()));
    }
    let same = |c: &Carrier| **c.parent() == **a.semigroup();
    if !parts.domains.iter().all(|d| same(d.carrier()))
        || !parts.theta.iter().all(|t| same(t.dom().carrier()))
        || !parts.twist.iter().all(|w| same(w.carrier()))
    {
        return Err(Error::ParentMismatch);
    }
    let d = &parts.domains;
    for x in 0..n {
        if d[x].is_empty() {
            return Err(tpa("TPA1", vec![x]));
        }
        if crate::semigroup::ideal_product(&d[x], &d[x])? != d[x] {
            return Err(tpa("TPA1", vec![x]));
        }
        for y in 0..n {
            if crate::semigroup::ideal_product(&d[x], &d[y])? != crate::semigroup::ideal_product(&d[y], &d[x])? {
                return Err(tpa("TPA1", vec![x, y]));
            }
        }
    }
    let e = g.identity();
    if d[e] != a.whole() || !parts.theta[e].is_identity() {
        return Err(tpa("TPA2", vec![e]));
    }
    for x in 0..n {
        let t = &parts.theta[x];
        if t.dom() != &d[g.inv(x)] || t.ran() != &d[x] {
            return Err(tpa("domains of theta", vec![x]));
        }
    }
    for x in 0..n {
        for y in 0..n {
            let src = d[g.inv(x)].intersection(&d[y])?;
            if parts.theta[x].image(&src)? != d[x].intersection(&d[g.mul(x, y)])? {
                return Err(tpa("TPA3", vec![x, y]));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let w = &parts.twist[x * n + y];
            if w.carrier() != d[x].intersection(&d[g.mul(x, y)])?.carrier() {
                return Err(Error::ShapeMismatch(format!("w_({x},{y}) lives on the wrong ideal")));
            }
            if !w.is_invertible() {
                return Err(tpa("twist invertible", vec![x, y]));
            }
        }
    }
    let th = &parts.theta;
    for x in 0..n {
        for y in 0..n {
            let xy = g.mul(x, y);
            let w = &parts.twist[x * n + y];
            let wi = w.invert().expect("checked invertible");
            let src = d[g.inv(y)].intersection(&d[g.inv(xy)])?;
            for &el in src.members() {
                if th[x].apply(th[y].apply(el)) != wi.right(w.left(th[xy].apply(el))) {
                    return Err(tpa("TPA4", vec![x, y, el]));
                }
            }
        }
    }
    for x in 0..n {
        if !parts.twist[e * n + x].is_identity() {
            return Err(tpa("TPA5", vec![e, x]));
        }
        if !parts.twist[x * n + e].is_identity() {
            return Err(tpa("TPA5", vec![x, e]));
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let yz = g.mul(y, z);
                let xy = g.mul(x, y);
                let src = d[g.inv(x)].intersection(&d[y])?.intersection(&d[yz])?;
                let w_yz = &parts.twist[y * n + z];
                let w_x_yz = &parts.twist[x * n + yz];
                let w_xy = &parts.twist[x * n + y];
                let w_xy_z = &parts.twist[xy * n + z];
                for &el in src.members() {
                    let lhs = w_x_yz.right(th[x].apply(w_yz.right(el)));
                    let rhs = w_xy_z.right(w_xy.right(th[x].apply(el)));
                    if lhs != rhs {
                        return Err(tpa("TPA6", vec![x, y, z, el]));
                    }
                }
            }
        }
    }
    Ok(TwistedPartialAction { parts })
}

impl TwistedPartialAction {
    pub fn parts(&self) -> &TpaParts {
        &self.parts
    }

    pub fn algebra(&self) -> &Arc<Clifford> {
        &self.parts.algebra
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.parts.group
    }

    pub fn domain(&self, g: usize) -> &Ideal {
        &self.parts.domains[g]
    }

    pub fn theta(&self, g: usize) -> &PartialIso {
        &self.parts.theta[g]
    }

    pub fn thetas(&self) -> &[PartialIso] {
        &self.parts.theta
    }

    pub fn twist(&self, g: usize, h: usize) -> &Multiplier {
        &self.parts.twist[g * self.parts.group.order() + h]
    }

    pub fn is_untwisted(&self) -> bool {
        self.parts.twist.iter().all(|w| w.is_identity())
    }

    /// The restricted action on the center, see [`restrict_to_center`].
    pub fn center_action(&self) -> Result<PartialAction> {
        restrict_to_center(&self.parts.algebra, &self.parts.group, &self.parts.theta)
    }
}

/// A partial action on a carrier; domains are ideals of that carrier.
#[derive(Clone, Debug)]
pub struct PartialAction {
    group: FiniteGroup,
    algebra: Carrier,
    domains: Vec<Carrier>,
    theta: Vec<Isomorphism>,
}

fn pa(axiom: &str, witness: Vec<usize>) -> Error {
    Error::PaViolation {
        axiom: axiom.into(),
        witness,
    }
}

/// Checks PA1–PA3; domains are read off as the ranges of the maps.
pub fn validate_pa(group: FiniteGroup, algebra: Carrier, theta: Vec<Isomorphism>) -> Result<PartialAction> {
    let n = group.order();
    if theta.len() != n {
        return Err(Error::ShapeMismatch(format!("{} maps for a group of order {n}", theta.len())));
    }
    let domains: Vec<Carrier> = theta.iter().map(|t| t.ran().clone()).collect();
    for x in 0..n {
        if !domains[x].is_ideal_of(&algebra) || domains[x].is_empty() {
            return Err(pa("domain is an ideal", vec![x]));
        }
        if theta[x].dom() != &domains[group.inv(x)] {
            return Err(pa("domains of theta", vec![x]));
        }
    }
    let e = group.identity();
    if domains[e] != algebra || theta[e].dom().members().iter().any(|&a| theta[e].apply(a) != a) {
        return Err(pa("PA1", vec![e]));
    }
    for x in 0..n {
        for y in 0..n {
            let src = domains[group.inv(x)].intersection(&domains[y])?;
            let tgt = domains[x].intersection(&domains[group.mul(x, y)])?;
            if theta[x].image(&src)? != tgt {
                return Err(pa("PA2", vec![x, y]));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let xy = group.mul(x, y);
            let src = domains[group.inv(y)].intersection(&domains[group.inv(xy)])?;
            for &a in src.members() {
                if theta[x].apply(theta[y].apply(a)) != theta[xy].apply(a) {
                    return Err(pa("PA3", vec![x, y, a]));
                }
            }
        }
    }
    Ok(PartialAction {
        group,
        algebra,
        domains,
        theta,
    })
}

impl PartialAction {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn algebra(&self) -> &Carrier {
        &self.algebra
    }

    pub fn domain(&self, g: usize) -> &Carrier {
        &self.domains[g]
    }

    pub fn theta(&self, g: usize) -> &Isomorphism {
        &self.theta[g]
    }

    /// Restriction to an ideal `I` of the carrier with domains `D_g ∩ I`
    /// and maps defined where they stay in `I`.
    pub fn restrict_to_ideal(&self, ideal: &Carrier) -> Result<PartialAction> {
        let n = self.group.order();
        let mut theta = Vec::with_capacity(n);
        for x in 0..n {
            let xi = self.group.inv(x);
            // dom: a ∈ D_{g⁻¹} ∩ I with θ_g(a) ∈ I
            let src = self.domains[xi].intersection(ideal)?;
            let keep: Vec<usize> = src
                .members()
                .iter()
                .copied()
                .filter(|&a| ideal.contains(self.theta[x].apply(a)))
                .collect();
            let sub = Carrier::new(ideal.parent(), keep)?;
            theta.push(self.theta[x].restrict(&sub)?);
        }
        validate_pa(self.group.clone(), ideal.clone(), theta)
    }
}

/// `θ̃_g = θ_g` restricted to `C(D_{g⁻¹}) → C(D_g)`, validated as a partial
/// action on `C(A)`.
pub fn restrict_to_center(a: &Clifford, group: &FiniteGroup, reps: &[PartialIso]) -> Result<PartialAction> {
    let n = group.order();
    if reps.len() != n {
        return Err(Error::ShapeMismatch(format!("{} maps for a group of order {n}", reps.len())));
    }
    let center = a.center();
    let centers: Vec<Carrier> = reps.iter().map(|r| r.ran().carrier().center()).collect();
    for x in 0..n {
        // for Clifford A the center of an ideal is its trace on C(A)
        if centers[x] != reps[x].ran().carrier().intersection(&center)? {
            return Err(Error::NotClifford);
        }
    }
    let mut theta = Vec::with_capacity(n);
    for x in 0..n {
        let t = reps[x].iso().restrict(&centers[group.inv(x)])?;
        if *t.ran() != centers[x] {
            return Err(pa("PA2", vec![x]));
        }
        theta.push(t);
    }
    validate_pa(group.clone(), center, theta)
}

/// Searches `ε_g ∈ U(M(D_g))` witnessing ETPA2–ETPA3; returns the least
/// family in unit order (group elements in index order) or `None`.
pub fn tpa_equivalent(
    session: &Session,
    t1: &TwistedPartialAction,
    t2: &TwistedPartialAction,
) -> Result<Option<Vec<Multiplier>>> {
    let g = t1.group();
    let n = g.order();
    if g != t2.group() || **t1.algebra().semigroup() != **t2.algebra().semigroup() {
        return Err(Error::ShapeMismatch("actions of different groups or on different semigroups".into()));
    }
    if (0..n).any(|x| t1.domain(x) != t2.domain(x)) {
        return Ok(None);
    }
    let mut candidates: Vec<Vec<Multiplier>> = Vec::with_capacity(n);
    for x in 0..n {
        let monoid = session.monoid(t1.domain(x).carrier())?;
        let src = t1.domain(g.inv(x));
        let mut c = Vec::new();
        for i in 0..monoid.units().len() {
            let eps = monoid.unit(i);
            let ei = eps.invert().expect("unit");
            if src
                .members()
                .iter()
                .all(|&a| t2.theta(x).apply(a) == ei.right(eps.left(t1.theta(x).apply(a))))
            {
                c.push(eps.clone());
            }
        }
        if c.is_empty() {
            return Ok(None);
        }
        candidates.push(c);
    }
    let etpa3 = |eps: &[Option<&Multiplier>], x: usize, y: usize| -> Result<bool> {
        let xy = g.mul(x, y);
        let (ex, ey, exy) = (eps[x].unwrap(), eps[y].unwrap(), eps[xy].unwrap());
        let src = t1.domain(g.inv(x)).intersection(t1.domain(y))?;
        let (w, w2) = (t1.twist(x, y), t2.twist(x, y));
        Ok(src.members().iter().all(|&a| {
            exy.right(w2.right(t2.theta(x).apply(a))) == w.right(ex.left(t1.theta(x).apply(ey.right(a))))
        }))
    };
    fn go<'a>(
        i: usize,
        n: usize,
        g: &FiniteGroup,
        cands: &'a [Vec<Multiplier>],
        eps: &mut Vec<Option<&'a Multiplier>>,
        check: &dyn Fn(&[Option<&Multiplier>], usize, usize) -> Result<bool>,
    ) -> Result<bool> {
        if i == n {
            return Ok(true);
        }
        for c in &cands[i] {
            eps[i] = Some(c);
            let mut ok = true;
            'pairs: for x in 0..=i {
                for y in 0..=i {
                    let xy = g.mul(x, y);
                    if (x == i || y == i || xy == i) && xy <= i && !check(eps, x, y)? {
                        ok = false;
                        break 'pairs;
                    }
                }
            }
            if ok && go(i + 1, n, g, cands, eps, check)? {
                return Ok(true);
            }
        }
        eps[i] = None;
        Ok(false)
    }
    let mut eps: Vec<Option<&Multiplier>> = vec![None; n];
    if go(0, n, g, &candidates, &mut eps, &etpa3)? {
        Ok(Some(eps.into_iter().map(|e| e.unwrap().clone()).collect()))
    } else {
        Ok(None)
    }
}

/// `vΘ = (θ, v′w)` with `v′_{g,h}` the central extension of `v_{g,h}` to
/// `D_g D_{gh}`. The result is returned unvalidated.
pub fn apply_2cochain(module: &PartialGModule, v: &Cochain, t: &TwistedPartialAction) -> Result<TpaParts> {
    let mut parts = t.parts().clone();
    parts.twist = twist_by_cochain(module, v, t.algebra(), t.group(), &parts.twist)?;
    Ok(parts)
}

/// The family `v′_{g,h} w_{g,h}` for an arbitrary family `w`.
pub(crate) fn twist_by_cochain(
    module: &PartialGModule,
    v: &Cochain,
    algebra: &Clifford,
    group: &FiniteGroup,
    twist: &[Multiplier],
) -> Result<Vec<Multiplier>> {
    if v.degree() != 2 {
        return Err(Error::DegreeMismatch { left: v.degree(), right: 2 });
    }
    let n = group.order();
    if module.group() != group || v.values().len() != n * n || twist.len() != n * n {
        return Err(Error::ShapeMismatch("cochain and action disagree on the group".into()));
    }
    let mut out = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let w = &twist[x * n + y];
            let vm = module.value(v, &[x, y]);
            if *vm.carrier() != w.carrier().center() {
                return Err(Error::ShapeMismatch(format!("v_({x},{y}) is not on the center of D_g D_gh")));
            }
            let ext = extend_central(algebra, w.carrier(), vm)?;
            out.push(ext.compose(w)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::multiplier::inner_multiplier;

    fn z3_inversion() -> TpaParts {
        let a = Arc::new(Clifford::new(Arc::new(catalog::cyclic(3))).unwrap());
        let g = catalog::group(catalog::cyclic(2));
        let w = a.whole();
        let theta = vec![PartialIso::identity(&w), PartialIso::new(w.clone(), w, &[0, 2, 1]).unwrap()];
        TpaParts::untwisted(a, g, theta).unwrap()
    }

    #[test]
    fn inversion_on_z3_is_valid() {
        let t = validate_tpa(z3_inversion()).unwrap();
        assert!(t.is_untwisted());
        let pa = t.center_action().unwrap();
        assert_eq!(pa.domain(1).members(), &[0, 1, 2]);
    }

    #[test]
    fn trivial_group_on_any_clifford_semigroup() {
        for s in [catalog::k3(), catalog::s3_with_zero(), catalog::diamond()] {
            let a = Arc::new(Clifford::new(Arc::new(s)).unwrap());
            let g = catalog::group(catalog::trivial());
            let theta = vec![PartialIso::identity(&a.whole())];
            assert!(validate_tpa(TpaParts::untwisted(a, g, theta).unwrap()).is_ok());
        }
    }

    #[test]
    fn tampered_unit_twist_violates_tpa5() {
        let a = Arc::new(Clifford::new(Arc::new(catalog::cyclic(2))).unwrap());
        let g = catalog::group(catalog::cyclic(2));
        let theta = vec![PartialIso::identity(&a.whole()), PartialIso::identity(&a.whole())];
        let mut parts = TpaParts::untwisted(a.clone(), g, theta).unwrap();
        parts.twist[2] = inner_multiplier(a.whole().carrier(), 1).unwrap();
        assert_eq!(
            validate_tpa(parts).unwrap_err(),
            Error::TpaViolation {
                axiom: "TPA5".into(),
                witness: vec![1, 0]
            }
        );
    }

    #[test]
    fn empty_domain_is_rejected() {
        let mut parts = z3_inversion();
        let s = parts.algebra.semigroup().clone();
        parts.domains[1] = Ideal::new(&s, []).unwrap();
        assert!(matches!(validate_tpa(parts), Err(Error::TpaViolation { axiom, .. }) if axiom == "TPA1"));
    }

    #[test]
    fn identity_partial_action_and_restriction_to_an_ideal() {
        // Z/2 swapping the two atoms of the diamond, restricted to the ideal {0, e, f}
        let s = Arc::new(catalog::diamond());
        let g = catalog::group(catalog::cyclic(2));
        let full = Carrier::full(&s);
        let swap = Isomorphism::new(full.clone(), full.clone(), &[0, 2, 1, 3]).unwrap();
        let pa = validate_pa(g.clone(), full.clone(), vec![Isomorphism::identity(&full), swap]).unwrap();
        let ideal = Carrier::new(&s, [0, 1, 2]).unwrap();
        let r = pa.restrict_to_ideal(&ideal).unwrap();
        assert_eq!(r.domain(1).members(), &[0, 1, 2]);
        let id = validate_pa(g, full.clone(), vec![Isomorphism::identity(&full), Isomorphism::identity(&full)]);
        assert!(id.is_ok());
    }

    #[test]
    fn tampered_pa3_is_reported() {
        // Z/3 acting on Z/2 × Z/2 (Klein) by cycling the nonzero elements, with
        // the generator's inverse map replaced by the wrong automorphism
        let s = Arc::new(catalog::klein());
        let g = catalog::group(catalog::cyclic(3));
        let full = Carrier::full(&s);
        let cyc = Isomorphism::new(full.clone(), full.clone(), &[0, 2, 3, 1]).unwrap();
        let swap = Isomorphism::new(full.clone(), full.clone(), &[0, 2, 1, 3]).unwrap();
        let err = validate_pa(g, full.clone(), vec![Isomorphism::identity(&full), cyc, swap]).unwrap_err();
        assert!(matches!(err, Error::PaViolation { axiom, .. } if axiom == "PA3"));
    }

    #[test]
    fn action_is_equivalent_to_itself() {
        let session = Session::default();
        let t = validate_tpa(z3_inversion()).unwrap();
        let eps = tpa_equivalent(&session, &t, &t).unwrap().unwrap();
        assert!(eps.iter().all(|e| e.is_identity()));
    }

    #[test]
    fn center_of_s3_zero_is_a_two_element_semilattice() {
        let a = Arc::new(Clifford::new(Arc::new(catalog::s3_with_zero())).unwrap());
        let g = catalog::group(catalog::cyclic(2));
        let w = a.whole();
        let t = validate_tpa(TpaParts::untwisted(a, g, vec![PartialIso::identity(&w), PartialIso::identity(&w)]).unwrap())
            .unwrap();
        let pa = t.center_action().unwrap();
        assert_eq!(pa.algebra().members(), &[0, 1]);
    }
}
