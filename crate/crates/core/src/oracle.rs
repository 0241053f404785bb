//! Brute-force ground truth for equivalence of extensions.
//!
//! Each extension is realized as an explicit group `E` with the embedded
//! copy `S` of `G_lambda` marked. Two extensions are equivalent exactly
//! when some isomorphism `E1 -> E2` carries `S1` onto `S2`: its restriction
//! to `S1` and the map it induces on `E1/S1` play the roles of the outer
//! isomorphisms in the commuting diagram. Nothing here looks at the
//! automorphism-matrix criterion.

use num_bigint::BigInt;

use crate::abelian::{cokernel_group, primary_decompose, Element, ExplicitGroup, PGroupType};
use crate::error::{Error, Result};
use crate::exactmat::IntMatrix;
use crate::extension::{presentation_matrix, ExtensionData};
use crate::limits::Limits;

/// An extension realized on an explicit group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitExtension {
    pub p: u64,
    pub lambda: PGroupType,
    pub mu: PGroupType,
    pub group: ExplicitGroup,
    /// Images of `y_1..y_l`.
    pub sub_gens: Vec<Element>,
    /// Images of the lifts `x~_1..x~_m`.
    pub quot_gens: Vec<Element>,
}

impl ExplicitExtension {
    pub fn subgroup(&self, limit: u64) -> Result<Vec<Element>> {
        self.group.subgroup_generated(&self.sub_gens, limit)
    }

    /// Verifies `|E| = p^{|lambda|+|mu|}`, that the marked subgroup has type
    /// `lambda`, and that the quotient has type `mu`.
    pub fn check_invariants(&self, limit: u64) -> Result<()> {
        let order = self.group.bounded_order(limit)?;
        let expected = self
            .p
            .checked_pow(self.lambda.size() + self.mu.size())
            .ok_or_else(|| Error::Overflow("extension order".into()))?;
        if order != expected {
            return Err(Error::InvariantViolation(format!(
                "|E| = {order}, expected {expected}"
            )));
        }

        let sub = self.subgroup(limit)?;
        let sub_type = self.group.subgroup_primary_type(&sub);
        if p_part(&sub_type, self.p) != self.lambda || sub_type.len() > 1 {
            return Err(Error::InvariantViolation(format!(
                "marked subgroup has type {sub_type:?}, expected {}",
                self.lambda
            )));
        }

        // E / S is presented by the factor relations plus the subgroup generators.
        let r = self.group.rank();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (k, &d) in self.group.factor_orders().iter().enumerate() {
            let mut row = vec![BigInt::from(0); r];
            row[k] = BigInt::from(d);
            rows.push(row);
        }
        for g in &self.sub_gens {
            rows.push(g.iter().map(|&x| BigInt::from(x)).collect());
        }
        let quotient = cokernel_group(&IntMatrix::from_rows(r, &rows)?, r)?;
        let quot_type = primary_decompose(quotient.factor_orders())?;
        if p_part(&quot_type, self.p) != self.mu || quot_type.len() > 1 {
            return Err(Error::InvariantViolation(format!(
                "quotient has type {quot_type:?}, expected {}",
                self.mu
            )));
        }
        Ok(())
    }
}

fn p_part(types: &std::collections::BTreeMap<u64, PGroupType>, p: u64) -> PGroupType {
    types.get(&p).cloned().unwrap_or_default()
}

/// Realizes the middle group as the cokernel of the presentation matrix.
pub fn realize_extension(ext: &ExtensionData, limits: &Limits) -> Result<ExplicitExtension> {
    ext.validate()?;
    let e = ext.lambda.size() + ext.mu.size();
    match ext.p.checked_pow(e) {
        Some(n) if n <= limits.max_order => {}
        Some(n) => return Err(Error::bound("group order", n, limits.max_order)),
        None => return Err(Error::bound("group order", format!("{}^{e}", ext.p), limits.max_order)),
    }
    let group = cokernel_group(&presentation_matrix(ext), ext.l() + ext.m())?;
    let images = group
        .generator_images()
        .expect("cokernel records generator images")
        .to_vec();
    let (sub, quot) = images.split_at(ext.l());
    Ok(ExplicitExtension {
        p: ext.p,
        lambda: ext.lambda.clone(),
        mu: ext.mu.clone(),
        sub_gens: sub.to_vec(),
        quot_gens: quot.to_vec(),
        group,
    })
}

/// Image of `x` under the homomorphism sending canonical generator `k` of
/// the source to `images[k]`.
fn apply_hom(target: &ExplicitGroup, images: &[Element], x: &[u64]) -> Element {
    let mut acc = target.identity();
    for (img, &c) in images.iter().zip(x) {
        for _ in 0..c {
            acc = target.add(&acc, img);
        }
    }
    acc
}

/// `{ s + c x : s in span, 0 <= c < d }`
fn extend_span(g: &ExplicitGroup, span: &[bool], x: &[u64], d: u64) -> (Vec<bool>, usize) {
    let mut out = span.to_vec();
    let members: Vec<usize> = (0..span.len()).filter(|&i| span[i]).collect();
    let mut step = x.to_vec();
    for _ in 1..d {
        for &i in &members {
            let y = g.add(&g.element_at(i), &step);
            out[g.index_of(&y)] = true;
        }
        step = g.add(&step, x);
    }
    let size = out.iter().filter(|&&b| b).count();
    (out, size)
}

struct IsoSearch<'a> {
    src: &'a ExplicitExtension,
    dst: &'a ExplicitExtension,
    candidates: Vec<Vec<Element>>,
    target_sub: Vec<bool>,
}

impl IsoSearch<'_> {
    fn run(&self, k: usize, images: &mut Vec<Element>, span: &[bool], size: usize) -> bool {
        let g2 = &self.dst.group;
        if k == self.candidates.len() {
            // `size == |E2|` here, so the map is bijective.
            return self.src.sub_gens.iter().all(|y| {
                let img = apply_hom(g2, images, y);
                self.target_sub[g2.index_of(&img)]
            });
        }
        let d = self.src.group.factor_orders()[k];
        for x in &self.candidates[k] {
            let (next, next_size) = extend_span(g2, span, x, d);
            if next_size != size * d as usize {
                continue;
            }
            images.push(x.clone());
            if self.run(k + 1, images, &next, next_size) {
                return true;
            }
            images.pop();
        }
        false
    }
}

/// Searches for an isomorphism `h: E1 -> E2` with `h(S1) = S2`, returned as
/// the images of the canonical generators of `E1`.
pub fn find_marked_isomorphism(
    e1: &ExplicitExtension,
    e2: &ExplicitExtension,
    limits: &Limits,
) -> Result<Option<Vec<Element>>> {
    let n1 = e1.group.bounded_order(limits.max_order)?;
    let n2 = e2.group.bounded_order(limits.max_order)?;
    if n1 != n2 {
        return Ok(None);
    }
    let s1 = e1.subgroup(limits.max_order)?;
    let s2 = e2.subgroup(limits.max_order)?;
    if s1.len() != s2.len() {
        return Ok(None);
    }
    let g2 = &e2.group;
    let mut target_sub = vec![false; n2 as usize];
    for x in &s2 {
        target_sub[g2.index_of(x)] = true;
    }
    let all2: Vec<Element> = g2.elements().collect();
    // An injective map preserves element orders.
    let candidates = e1
        .group
        .factor_orders()
        .iter()
        .map(|&d| {
            all2.iter()
                .filter(|x| g2.element_order(x) == d)
                .cloned()
                .collect()
        })
        .collect();
    let search = IsoSearch {
        src: e1,
        dst: e2,
        candidates,
        target_sub,
    };
    let mut span = vec![false; n2 as usize];
    span[0] = true;
    let mut images = Vec::new();
    Ok(search.run(0, &mut images, &span, 1).then_some(images))
}

/// Whether the two realized extensions are equivalent.
pub fn diagram_equivalent(
    e1: &ExplicitExtension,
    e2: &ExplicitExtension,
    limits: &Limits,
) -> Result<bool> {
    if e1.p != e2.p || e1.lambda != e2.lambda || e1.mu != e2.mu {
        return Err(Error::MismatchedParameters);
    }
    Ok(find_marked_isomorphism(e1, e2, limits)?.is_some())
}

/// Counts automorphisms of `g` by trying every assignment of generator
/// images that respects the relations `d_k e_k = 0` and keeping the
/// bijective ones.
pub fn count_automorphisms(g: &ExplicitGroup, limit: u64) -> Result<u64> {
    let n = g.bounded_order(limit)?;
    let all: Vec<Element> = g.elements().collect();
    let choices: Vec<Vec<Element>> = g
        .factor_orders()
        .iter()
        .map(|&d| {
            all.iter()
                .filter(|x| d % g.element_order(x) == 0)
                .cloned()
                .collect()
        })
        .collect();
    let mut count = 0u64;
    let mut pick = vec![0usize; choices.len()];
    loop {
        let images: Vec<Element> = pick.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        if g.subgroup_generated(&images, limit)?.len() as u64 == n {
            count += 1;
        }
        let mut k = choices.len();
        loop {
            if k == 0 {
                return Ok(count);
            }
            k -= 1;
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
        }
    }
}
