//! JSON writers and readers for the three element types.
//!
//! Every payload carries `"schema": "bisetplus/1"`.  Subgroups are written as
//! generator lists (permutation image sequences; pairs of sequences for
//! subgroups of a direct product), so a payload is self-contained: the reader
//! rebuilds the groups from the embedded descriptors and canonicalizes the
//! terms exactly as the in-memory constructors do.  `read(write(x)) == x`
//! for each type.

use crate::biset::BisetElement;
use crate::error::{Error, Result};
use crate::functor::CoeffFunctor;
use crate::ghost::GhostElement;
use crate::group::{GroupDescriptor, PermGroup};
use crate::lattice::lattice_of;
use crate::plus::{canonicalize_at_entry, PlusElement};
use crate::product::ProductSubgroup;
use serde_json::{json, Value};

/// Schema tag stamped on every JSON payload.
pub const SCHEMA: &str = "bisetplus/1";

// ---------------------------------------------------------------------------
// Generator extraction
// ---------------------------------------------------------------------------

/// A minimal generating set of pairs for `D ≤ G×H`, chosen greedily from the
/// canonical pair list (deterministic for a given class representative).
pub fn product_generator_pairs(d: &ProductSubgroup) -> Result<Vec<(u32, u32)>> {
    let (le, ri) = (d.left(), d.right());
    let mut chosen: Vec<(u32, u32)> = Vec::new();
    let mut span = ProductSubgroup::generated(le, ri, &chosen)?;
    for &(a, b) in &d.canonical_pairs() {
        if span.order() == d.order() {
            break;
        }
        if !span.contains_pair(a, b) {
            chosen.push((a, b));
            span = ProductSubgroup::generated(le, ri, &chosen)?;
        }
    }
    Ok(chosen)
}

fn images_of(g: &PermGroup, idx: u32) -> Vec<u16> {
    g.elem(idx).images().to_vec()
}

fn index_of_images(g: &PermGroup, images: &[u16]) -> Result<u32> {
    let p = crate::perm::Perm::from_images(images.to_vec())?;
    g.index_of(&p).ok_or_else(|| {
        Error::Parse(format!(
            "permutation {p} is not an element of {}",
            g.name().unwrap_or("the group")
        ))
    })
}

fn value_as_images(v: &Value) -> Result<Vec<u16>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("generator must be an image array".into()))?;
    arr.iter()
        .map(|x| {
            x.as_u64()
                .and_then(|n| u16::try_from(n).ok())
                .ok_or_else(|| Error::Parse(format!("bad image value {x} in generator")))
        })
        .collect()
}

/// Locate the lattice entry of `g` generated by the given image sequences.
fn entry_of_generators(g: &PermGroup, gens: &Value) -> Result<u32> {
    let arr = gens
        .as_array()
        .ok_or_else(|| Error::Parse("subgroup_generators must be an array".into()))?;
    let idx: Vec<u32> = arr
        .iter()
        .map(|v| value_as_images(v).and_then(|im| index_of_images(g, &im)))
        .collect::<Result<Vec<_>>>()?;
    let sub = g.generated_by_indices(&idx);
    let members = g.member_indices(&sub)?;
    let lat = lattice_of(g);
    lat.index_of_members(&members)
        .ok_or_else(|| Error::Parse("generated subgroup is not in the lattice".into()))
}

// ---------------------------------------------------------------------------
// Shared header plumbing
// ---------------------------------------------------------------------------

fn check_schema(v: &Value) -> Result<()> {
    match v.get("schema").and_then(Value::as_str) {
        Some(s) if s == SCHEMA => Ok(()),
        Some(s) => Err(Error::Parse(format!(
            "unsupported schema {s:?} (expected {SCHEMA:?})"
        ))),
        None => Err(Error::Parse("missing \"schema\" field".into())),
    }
}

fn group_field(v: &Value, field: &str) -> Result<PermGroup> {
    let d = v
        .get(field)
        .ok_or_else(|| Error::Parse(format!("missing {field:?} field")))?;
    let desc: GroupDescriptor = serde_json::from_value(d.clone())
        .map_err(|e| Error::Parse(format!("bad group descriptor in {field:?}: {e}")))?;
    desc.build()
}

fn check_functor(v: &Value, f: &dyn CoeffFunctor) -> Result<()> {
    match v.get("functor").and_then(Value::as_str) {
        Some(s) if s == f.name() => Ok(()),
        Some(s) => Err(Error::Parse(format!(
            "payload is for functor {s:?}, reader has {:?}",
            f.name()
        ))),
        None => Err(Error::Parse("missing \"functor\" field".into())),
    }
}

fn terms_array(v: &Value) -> Result<&Vec<Value>> {
    v.get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"terms\" array".into()))
}

fn coeff_field(t: &Value) -> Result<i64> {
    t.get("coeff")
        .and_then(Value::as_i64)
        .ok_or_else(|| Error::Parse("term is missing an integer \"coeff\"".into()))
}

// ---------------------------------------------------------------------------
// BisetElement
// ---------------------------------------------------------------------------

/// `{schema, left, right, terms: [{subgroup_generators: [[l,r],…], coeff}]}`
/// with each generator a pair of image sequences.
pub fn biset_to_json(x: &BisetElement) -> Result<Value> {
    let mut terms = Vec::new();
    for (d, coeff) in x.terms() {
        let gens: Vec<Value> = product_generator_pairs(d)?
            .into_iter()
            .map(|(a, b)| json!([images_of(x.left(), a), images_of(x.right(), b)]))
            .collect();
        terms.push(json!({ "subgroup_generators": gens, "coeff": coeff }));
    }
    Ok(json!({
        "schema": SCHEMA,
        "left": GroupDescriptor::of_group(x.left()),
        "right": GroupDescriptor::of_group(x.right()),
        "terms": terms,
    }))
}

pub fn biset_from_json(v: &Value) -> Result<BisetElement> {
    check_schema(v)?;
    let left = group_field(v, "left")?;
    let right = group_field(v, "right")?;
    let mut out = BisetElement::zero(&left, &right);
    for t in terms_array(v)? {
        let coeff = coeff_field(t)?;
        let gens = t
            .get("subgroup_generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("term is missing \"subgroup_generators\"".into()))?;
        let mut pairs = Vec::with_capacity(gens.len());
        for gv in gens {
            let pair = gv
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Parse("product generator must be a [left,right] pair".into()))?;
            let a = index_of_images(&left, &value_as_images(&pair[0])?)?;
            let b = index_of_images(&right, &value_as_images(&pair[1])?)?;
            pairs.push((a, b));
        }
        let d = ProductSubgroup::generated(&left, &right, &pairs)?;
        out.add_class(&d, coeff);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// PlusElement
// ---------------------------------------------------------------------------

/// `{schema, group, functor, terms: [{subgroup_generators, basis_label, coeff}]}`
/// with the subgroup given by generators of the class representative and the
/// label in the functor's JSON form.
pub fn plus_to_json(f: &dyn CoeffFunctor, x: &PlusElement<i64>) -> Result<Value> {
    let g = x.group();
    let lat = lattice_of(g);
    let mut terms = Vec::new();
    for ((class, b), &coeff) in x.terms() {
        let entry = lat.entry(lat.class(class).rep());
        let gens: Vec<Value> = entry
            .gens()
            .iter()
            .map(|&i| json!(images_of(g, i)))
            .collect();
        terms.push(json!({
            "subgroup_generators": gens,
            "basis_label": f.label_value(lat.rep_group(class), b)?,
            "coeff": coeff,
        }));
    }
    Ok(json!({
        "schema": SCHEMA,
        "group": GroupDescriptor::of_group(g),
        "functor": f.name(),
        "terms": terms,
    }))
}

pub fn plus_from_json(f: &dyn CoeffFunctor, v: &Value) -> Result<PlusElement<i64>> {
    check_schema(v)?;
    check_functor(v, f)?;
    let g = group_field(v, "group")?;
    let lat = lattice_of(&g);
    let mut out = PlusElement::zero(&g);
    for t in terms_array(v)? {
        let coeff = coeff_field(t)?;
        let gens = t
            .get("subgroup_generators")
            .ok_or_else(|| Error::Parse("term is missing \"subgroup_generators\"".into()))?;
        let entry = entry_of_generators(&g, gens)?;
        let h = lat.group_of(entry).clone();
        let wanted = t
            .get("basis_label")
            .ok_or_else(|| Error::Parse("term is missing \"basis_label\"".into()))?;
        let mut label = None;
        for b in 0..f.basis_size(&h)? {
            if &f.label_value(&h, b)? == wanted {
                label = Some(b);
                break;
            }
        }
        let label = label.ok_or_else(|| {
            Error::UnknownLabel(format!("no basis label of {} matches {wanted}", f.name()))
        })?;
        let key = canonicalize_at_entry(f, &lat, entry, &h, label)?;
        out.add_term(key, coeff);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// GhostElement
// ---------------------------------------------------------------------------

/// `{schema, group, functor, components: [{subgroup_generators, value}]}` with
/// one entry per subgroup class in lattice order; `value` lists the
/// coefficients over the basis of the class representative.
pub fn ghost_to_json(f: &dyn CoeffFunctor, y: &GhostElement<i64>) -> Result<Value> {
    let g = y.group();
    let lat = lattice_of(g);
    let mut components = Vec::new();
    for c in 0..lat.num_classes() as u32 {
        let entry = lat.entry(lat.class(c).rep());
        let gens: Vec<Value> = entry
            .gens()
            .iter()
            .map(|&i| json!(images_of(g, i)))
            .collect();
        components.push(json!({
            "subgroup_generators": gens,
            "value": y.component(c),
        }));
    }
    Ok(json!({
        "schema": SCHEMA,
        "group": GroupDescriptor::of_group(g),
        "functor": f.name(),
        "components": components,
    }))
}

pub fn ghost_from_json(f: &dyn CoeffFunctor, v: &Value) -> Result<GhostElement<i64>> {
    check_schema(v)?;
    check_functor(v, f)?;
    let g = group_field(v, "group")?;
    let lat = lattice_of(&g);
    let arr = v
        .get("components")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"components\" array".into()))?;
    if arr.len() != lat.num_classes() {
        return Err(Error::Parse(format!(
            "expected {} components, got {}",
            lat.num_classes(),
            arr.len()
        )));
    }
    let mut components = Vec::with_capacity(arr.len());
    for (c, cv) in arr.iter().enumerate() {
        let gens = cv
            .get("subgroup_generators")
            .ok_or_else(|| Error::Parse("component is missing \"subgroup_generators\"".into()))?;
        let entry = entry_of_generators(&g, gens)?;
        let rep = lat.class(c as u32).rep();
        if entry != rep {
            return Err(Error::Parse(format!(
                "component {c} names lattice entry {entry}, expected the class representative {rep}"
            )));
        }
        let vals = cv
            .get("value")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("component is missing a \"value\" array".into()))?;
        let row: Vec<i64> = vals
            .iter()
            .map(|x| {
                x.as_i64()
                    .ok_or_else(|| Error::Parse(format!("bad component value {x}")))
            })
            .collect::<Result<_>>()?;
        components.push(row);
    }
    GhostElement::from_components(f, &g, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biset::{elementary, mackey_compose, standard_basis, Elementary};
    use crate::functor::{constant_functor, fibered_functor};
    use crate::ghost::{ghost_mult, GhostElement};
    use crate::group::preset;
    use crate::mark::mark;
    use crate::plus::{plus_generator_at, plus_one};

    fn s3_c2() -> (PermGroup, PermGroup) {
        let s3 = preset("S3").unwrap();
        let lat = lattice_of(&s3);
        let c2 = lat.group_of(1).clone();
        (s3, c2)
    }

    #[test]
    fn biset_elements_round_trip_through_json() {
        let (s3, c2) = s3_c2();
        let res = elementary(&Elementary::Res {
            big: s3.clone(),
            small: c2.clone(),
        })
        .unwrap();
        let ind = elementary(&Elementary::Ind {
            big: s3.clone(),
            small: c2.clone(),
        })
        .unwrap();
        let x = mackey_compose(&ind, &res).unwrap().scale(3).sub(
            &BisetElement::identity(&s3),
        )
        .unwrap();
        let v = biset_to_json(&x).unwrap();
        assert_eq!(biset_from_json(&v).unwrap(), x);
    }

    #[test]
    fn every_standard_class_of_a_product_round_trips() {
        let s3 = preset("S3").unwrap();
        let c4 = preset("C4").unwrap();
        for d in standard_basis(&s3, &c4) {
            let x = BisetElement::from_class(&d);
            let v = biset_to_json(&x).unwrap();
            assert_eq!(biset_from_json(&v).unwrap(), x);
        }
    }

    #[test]
    fn plus_elements_round_trip_for_both_functors() {
        let s3 = preset("S3").unwrap();
        let f = constant_functor();
        let mut x: PlusElement<i64> = plus_one(&f, &s3).unwrap();
        x = x
            .add(&plus_generator_at(&f, &s3, 1, 0).unwrap().scale(&-2))
            .unwrap();
        let v = plus_to_json(&f, &x).unwrap();
        assert_eq!(plus_from_json(&f, &v).unwrap(), x);

        let c4 = preset("C4").unwrap();
        let f2 = fibered_functor(2).unwrap();
        let lat = lattice_of(&c4);
        let full = lat.len() as u32 - 1;
        let mut y: PlusElement<i64> = plus_generator_at(&f2, &c4, full, 1).unwrap();
        y = y.add(&plus_generator_at(&f2, &c4, 1, 1).unwrap().scale(&5)).unwrap();
        let v2 = plus_to_json(&f2, &y).unwrap();
        assert_eq!(plus_from_json(&f2, &v2).unwrap(), y);
    }

    #[test]
    fn ghost_elements_round_trip_and_validate_shape() {
        let s3 = preset("S3").unwrap();
        let f = constant_functor();
        let unit: GhostElement<i64> = GhostElement::unit(&f, &s3).unwrap();
        let m = mark(&f, &plus_one::<i64>(&f, &s3).unwrap()).unwrap();
        let y = ghost_mult(&f, &unit, &m).unwrap().scale_all(&7);
        let v = ghost_to_json(&f, &y).unwrap();
        assert_eq!(ghost_from_json(&f, &v).unwrap(), y);

        let mut broken = v.clone();
        broken["components"].as_array_mut().unwrap().pop();
        assert!(ghost_from_json(&f, &broken).is_err());
    }

    #[test]
    fn the_schema_field_is_required_and_checked() {
        let (s3, _) = s3_c2();
        let x = BisetElement::identity(&s3);
        let mut v = biset_to_json(&x).unwrap();
        assert_eq!(v["schema"], "bisetplus/1");
        v["schema"] = serde_json::json!("bisetplus/0");
        assert!(biset_from_json(&v).is_err());
    }
}
