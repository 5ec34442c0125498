//! The compressed form: a quotient complex `Y` with a stabilizer subgroup per
//! simplex and a transfer element per codimension-one face relation.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::GroupAction;
use crate::group::{ElementId, FiniteGroup, GroupDocument, GroupError, Subgroup, SubgroupError};
use crate::simplicial::{ComplexDocument, SimplexId, SimplicialComplex, SimplicialError};

#[derive(Debug, Error)]
pub enum TripleError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Complex(#[from] SimplicialError),
    #[error("stabilizer of quotient simplex {simplex}: {source}")]
    Subgroup { simplex: u32, source: SubgroupError },
    #[error("{found} stabilizers for a quotient with {expected} simplices")]
    StabilizerCount { found: usize, expected: usize },
    #[error("transfer keyed by ({parent}, {child}), which is not a codimension-one face relation")]
    NotAFace { parent: u32, child: u32 },
    #[error("transfer for ({parent}, {child}) given twice")]
    DuplicateTransfer { parent: u32, child: u32 },
    #[error("no transfer for the face relation ({parent}, {child})")]
    MissingTransfer { parent: u32, child: u32 },
    #[error("element {element} is outside a group of order {order}")]
    ElementOutOfRange { element: u32, order: usize },
    #[error("certificate: {0}")]
    Certificate(String),
}

impl From<serde_json::Error> for TripleError {
    fn from(e: serde_json::Error) -> Self {
        TripleError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

/// `(Y, S, T)` together with the group. Transfers are stored per quotient
/// simplex, aligned with `Y.faces_codim1(y)`.
#[derive(Debug, Clone)]
pub struct CompressedTriple {
    group: Arc<FiniteGroup>,
    quotient: Arc<SimplicialComplex>,
    stabilizers: Vec<Subgroup>,
    transfers: Vec<Box<[ElementId]>>,
}

impl PartialEq for CompressedTriple {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_group(&other.group)
            && self.quotient == other.quotient
            && self.stabilizers == other.stabilizers
            && self.transfers == other.transfers
    }
}

impl CompressedTriple {
    /// Assembles a triple after checking that `S` and `T` have the right
    /// domains and that all elements lie in the group. Algebraic laws are
    /// left to [`validate_triple`].
    pub fn new(
        group: Arc<FiniteGroup>,
        quotient: Arc<SimplicialComplex>,
        stabilizers: Vec<Subgroup>,
        transfers: Vec<Vec<ElementId>>,
    ) -> Result<Self, TripleError> {
        let k = group.order();
        if stabilizers.len() != quotient.len() {
            return Err(TripleError::StabilizerCount {
                found: stabilizers.len(),
                expected: quotient.len(),
            });
        }
        if transfers.len() != quotient.len() {
            return Err(TripleError::Certificate(format!(
                "{} transfer rows for {} quotient simplices",
                transfers.len(),
                quotient.len()
            )));
        }
        for (y, s) in stabilizers.iter().enumerate() {
            if let Some(g) = s.members().iter().find(|g| g.index() >= k) {
                return Err(TripleError::Subgroup {
                    simplex: y as u32,
                    source: SubgroupError::OutOfRange(g.0, k),
                });
            }
        }
        for (y, row) in transfers.iter().enumerate() {
            let faces = quotient.faces_codim1(SimplexId(y as u32));
            if row.len() != faces.len() {
                let child = faces.get(row.len()).map_or(u32::MAX, |f| f.0);
                return Err(TripleError::MissingTransfer {
                    parent: y as u32,
                    child,
                });
            }
            if let Some(g) = row.iter().find(|g| g.index() >= k) {
                return Err(TripleError::ElementOutOfRange {
                    element: g.0,
                    order: k,
                });
            }
        }
        Ok(CompressedTriple {
            group,
            quotient,
            stabilizers,
            transfers: transfers.into_iter().map(Vec::into_boxed_slice).collect(),
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn quotient(&self) -> &Arc<SimplicialComplex> {
        &self.quotient
    }

    pub fn stabilizer(&self, y: SimplexId) -> &Subgroup {
        &self.stabilizers[y.index()]
    }

    pub fn stabilizers(&self) -> &[Subgroup] {
        &self.stabilizers
    }

    /// Transfers of `y`, aligned with `quotient().faces_codim1(y)`.
    pub fn transfers_of(&self, y: SimplexId) -> &[ElementId] {
        &self.transfers[y.index()]
    }

    /// `T(y ⪰ child)`, if `child` is a codimension-one face of `y`.
    pub fn transfer(&self, y: SimplexId, child: SimplexId) -> Option<ElementId> {
        let pos = self
            .quotient
            .faces_codim1(y)
            .iter()
            .position(|&c| c == child)?;
        Some(self.transfers[y.index()][pos])
    }

    /// Replaces `T(y ⪰ child)`.
    pub fn set_transfer(
        &mut self,
        y: SimplexId,
        child: SimplexId,
        g: ElementId,
    ) -> Result<(), TripleError> {
        let not_face = TripleError::NotAFace {
            parent: y.0,
            child: child.0,
        };
        if y.index() >= self.quotient.len() {
            return Err(not_face);
        }
        let pos = self
            .quotient
            .faces_codim1(y)
            .iter()
            .position(|&c| c == child)
            .ok_or(not_face)?;
        if g.index() >= self.group.order() {
            return Err(TripleError::ElementOutOfRange {
                element: g.0,
                order: self.group.order(),
            });
        }
        self.transfers[y.index()][pos] = g;
        Ok(())
    }

    /// Replaces `S(y)`.
    pub fn set_stabilizer(&mut self, y: SimplexId, s: Subgroup) {
        self.stabilizers[y.index()] = s;
    }

    /// Every `(parent, child, T)` in canonical order.
    pub fn transfer_entries(&self) -> impl Iterator<Item = (SimplexId, SimplexId, ElementId)> + '_ {
        self.quotient.ids().flat_map(move |y| {
            self.quotient
                .faces_codim1(y)
                .iter()
                .zip(self.transfers_of(y).iter())
                .map(move |(&c, &g)| (y, c, g))
        })
    }

    /// `Σ_y [G : S(y)]`, the size of the reconstructed complex.
    pub fn total_index(&self) -> usize {
        self.stabilizers
            .iter()
            .map(|s| self.group.order() / s.order())
            .sum()
    }

    pub fn to_document(&self, cert: Option<&CompressionCertificate>) -> TripleDocument {
        TripleDocument {
            group: self.group.to_document(),
            quotient: self.quotient.to_document(),
            stabilizers: self
                .stabilizers
                .iter()
                .map(|s| s.members().iter().map(|g| g.0).collect())
                .collect(),
            transfers: self
                .transfer_entries()
                .map(|(p, c, g)| [p.0, c.0, g.0])
                .collect(),
            certificate: cert.map(|c| CertificateDocument {
                p: c.orbit_map.iter().map(|x| x.0).collect(),
                lift: c.lift.iter().map(|x| x.0).collect(),
            }),
        }
    }

    /// Canonical single-line JSON followed by a newline.
    pub fn to_json(&self, cert: Option<&CompressionCertificate>) -> String {
        let mut s = serde_json::to_string(&self.to_document(cert)).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_document(
        doc: &TripleDocument,
    ) -> Result<(Self, Option<CompressionCertificate>), TripleError> {
        let group = Arc::new(FiniteGroup::from_document(&doc.group)?);
        let quotient = Arc::new(SimplicialComplex::from_document(&doc.quotient)?);
        let k = group.order();
        if doc.stabilizers.len() != quotient.len() {
            return Err(TripleError::StabilizerCount {
                found: doc.stabilizers.len(),
                expected: quotient.len(),
            });
        }
        let stabilizers = doc
            .stabilizers
            .iter()
            .enumerate()
            .map(|(y, members)| {
                Subgroup::try_from_members(k, members.iter().map(|&g| ElementId(g)).collect())
                    .map_err(|source| TripleError::Subgroup {
                        simplex: y as u32,
                        source,
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;

        let mut rows: Vec<Vec<Option<ElementId>>> = quotient
            .ids()
            .map(|y| vec![None; quotient.faces_codim1(y).len()])
            .collect();
        for &[p, c, g] in &doc.transfers {
            let not_face = TripleError::NotAFace {
                parent: p,
                child: c,
            };
            if p as usize >= quotient.len() {
                return Err(not_face);
            }
            let pos = quotient
                .faces_codim1(SimplexId(p))
                .iter()
                .position(|&f| f.0 == c)
                .ok_or(not_face)?;
            if g as usize >= k {
                return Err(TripleError::ElementOutOfRange {
                    element: g,
                    order: k,
                });
            }
            let slot = &mut rows[p as usize][pos];
            if slot.is_some() {
                return Err(TripleError::DuplicateTransfer {
                    parent: p,
                    child: c,
                });
            }
            *slot = Some(ElementId(g));
        }
        let mut transfers = Vec::with_capacity(rows.len());
        for (y, row) in rows.into_iter().enumerate() {
            let faces = quotient.faces_codim1(SimplexId(y as u32));
            let row = row
                .into_iter()
                .zip(faces)
                .map(|(g, f)| {
                    g.ok_or(TripleError::MissingTransfer {
                        parent: y as u32,
                        child: f.0,
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            transfers.push(row);
        }
        let triple = Self::new(group, Arc::clone(&quotient), stabilizers, transfers)?;

        let cert = match &doc.certificate {
            None => None,
            Some(c) => {
                if c.lift.len() != quotient.len() {
                    return Err(TripleError::Certificate(format!(
                        "{} lifts for {} quotient simplices",
                        c.lift.len(),
                        quotient.len()
                    )));
                }
                if let Some(&y) = c.p.iter().find(|&&y| y as usize >= quotient.len()) {
                    return Err(TripleError::Certificate(format!(
                        "orbit map value {y} is not a quotient simplex"
                    )));
                }
                if let Some(&x) = c.lift.iter().find(|&&x| x as usize >= c.p.len()) {
                    return Err(TripleError::Certificate(format!(
                        "lift {x} is outside the original complex"
                    )));
                }
                Some(CompressionCertificate {
                    orbit_map: c.p.iter().map(|&y| SimplexId(y)).collect(),
                    lift: c.lift.iter().map(|&x| SimplexId(x)).collect(),
                })
            }
        };
        Ok((triple, cert))
    }

    pub fn from_json(text: &str) -> Result<(Self, Option<CompressionCertificate>), TripleError> {
        let doc: TripleDocument = serde_json::from_str(text)?;
        Self::from_document(&doc)
    }
}

/// Orbit map `p: X → Y` and lifts `ℓ: Y → X` from one compression run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressionCertificate {
    pub orbit_map: Vec<SimplexId>,
    pub lift: Vec<SimplexId>,
}

impl CompressionCertificate {
    pub fn p(&self, x: SimplexId) -> SimplexId {
        self.orbit_map[x.index()]
    }

    pub fn lift(&self, y: SimplexId) -> SimplexId {
        self.lift[y.index()]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub p: Vec<u32>,
    pub lift: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleDocument {
    pub group: GroupDocument,
    pub quotient: ComplexDocument,
    pub stabilizers: Vec<Vec<u32>>,
    pub transfers: Vec<[u32; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// `S(y)` is not closed or misses the identity.
    NotASubgroup {
        simplex: SimplexId,
        detail: String,
    },
    /// `T · s · T⁻¹ ∉ S(child)` for some `s ∈ S(parent)`.
    Embedding {
        parent: SimplexId,
        child: SimplexId,
        transfer: ElementId,
        element: ElementId,
        image: ElementId,
    },
    /// The two descending paths `top ⪰ via[i] ⪰ bottom` disagree modulo
    /// `S(bottom)`; `element` is the offending quotient of path products.
    PathDependence {
        top: SimplexId,
        via: [SimplexId; 2],
        bottom: SimplexId,
        element: ElementId,
    },
    InputMismatch {
        detail: String,
    },
    /// `p(ℓ(y)) ≠ y` or `ℓ(p(x))` is outside the orbit of `x`.
    Lift {
        simplex: SimplexId,
    },
    /// `p` does not send a face relation of `X` to one of `Y`.
    OrbitMap {
        parent: SimplexId,
        child: SimplexId,
    },
    StabilizerMismatch {
        simplex: SimplexId,
    },
    /// `T(parent ⪰ child)` does not carry the matching face of the lift of
    /// `parent` onto the lift of `child`.
    TransferMismatch {
        parent: SimplexId,
        child: SimplexId,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotASubgroup { simplex, detail } => {
                write!(f, "S({}) is not a subgroup: {detail}", simplex.0)
            }
            Violation::Embedding {
                parent,
                child,
                transfer,
                element,
                image,
            } => write!(
                f,
                "conjugation by T({} ⪰ {}) = {} sends {} ∈ S({}) to {} ∉ S({})",
                parent.0, child.0, transfer.0, element.0, parent.0, image.0, child.0
            ),
            Violation::PathDependence {
                top,
                via,
                bottom,
                element,
            } => write!(
                f,
                "paths {} ⪰ {} ⪰ {} and {} ⪰ {} ⪰ {} differ by {} ∉ S({})",
                top.0, via[0].0, bottom.0, top.0, via[1].0, bottom.0, element.0, bottom.0
            ),
            Violation::InputMismatch { detail } => write!(f, "input mismatch: {detail}"),
            Violation::Lift { simplex } => write!(f, "lift of {} is inconsistent", simplex.0),
            Violation::OrbitMap { parent, child } => {
                write!(
                    f,
                    "orbit map breaks the face relation ({}, {})",
                    parent.0, child.0
                )
            }
            Violation::StabilizerMismatch { simplex } => {
                write!(
                    f,
                    "S({}) differs from the stabilizer of its lift",
                    simplex.0
                )
            }
            Violation::TransferMismatch { parent, child } => {
                write!(
                    f,
                    "T({} ⪰ {}) does not carry the face onto the lift",
                    parent.0, child.0
                )
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every `S(y)` is a subgroup, that conjugation by each
/// transfer embeds `S(y)` into `S(y')`, and that both descending paths of
/// length two between any pair of simplices agree modulo the bottom
/// stabilizer.
pub fn validate_triple(t: &CompressedTriple) -> ValidationReport {
    let y_complex = &t.quotient;
    let violations = y_complex
        .ids()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&y| validate_simplex(t, y))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    ValidationReport { violations }
}

fn validate_simplex(t: &CompressedTriple, y: SimplexId) -> Vec<Violation> {
    let g = &t.group;
    let yc = &t.quotient;
    let mut out = Vec::new();
    if let Err(e) = t.stabilizer(y).check_closure(g) {
        out.push(Violation::NotASubgroup {
            simplex: y,
            detail: e.to_string(),
        });
    }
    for (&child, &tr) in yc.faces_codim1(y).iter().zip(t.transfers_of(y)) {
        let target = t.stabilizer(child);
        for &s in t.stabilizer(y).members() {
            let image = g.conjugate(tr, s);
            if !target.contains(image) {
                out.push(Violation::Embedding {
                    parent: y,
                    child,
                    transfer: tr,
                    element: s,
                    image,
                });
                break;
            }
        }
    }
    // Codimension-two faces are reached along exactly two paths.
    let mut paths: Vec<(SimplexId, SimplexId, ElementId)> = Vec::new();
    for (&mid, &t1) in yc.faces_codim1(y).iter().zip(t.transfers_of(y)) {
        for (&bottom, &t2) in yc.faces_codim1(mid).iter().zip(t.transfers_of(mid)) {
            paths.push((bottom, mid, g.mul(t2, t1)));
        }
    }
    paths.sort_by_key(|&(bottom, mid, _)| (bottom, mid));
    for pair in paths.chunks(2) {
        if let [(bottom, m1, a), (_, m2, b)] = *pair {
            let element = g.mul(a, g.inverse(b));
            if !t.stabilizer(bottom).contains(element) {
                out.push(Violation::PathDependence {
                    top: y,
                    via: [m1, m2],
                    bottom,
                    element,
                });
            }
        }
    }
    out
}

/// Checks a triple and certificate against the action they came from:
/// `p ∘ ℓ = id`, `ℓ ∘ p` stays in orbits, `p` is simplicial,
/// `S(y) = stab(ℓ(y))`, and each transfer carries the matching face of
/// `ℓ(y)` onto the lift of that face's class.
pub fn validate_against_action(
    t: &CompressedTriple,
    cert: &CompressionCertificate,
    action: &GroupAction,
) -> ValidationReport {
    let x = action.complex();
    let yc = &t.quotient;
    let mut mismatch = Vec::new();
    if !t.group.same_group(action.group()) {
        mismatch.push("triple and action use different groups".to_string());
    }
    if cert.orbit_map.len() != x.len() {
        mismatch.push(format!(
            "orbit map has {} entries for {} simplices",
            cert.orbit_map.len(),
            x.len()
        ));
    }
    if cert.lift.len() != yc.len() {
        mismatch.push(format!(
            "{} lifts for {} quotient simplices",
            cert.lift.len(),
            yc.len()
        ));
    }
    if cert.orbit_map.iter().any(|y| y.index() >= yc.len())
        || cert.lift.iter().any(|x2| x2.index() >= x.len())
    {
        mismatch.push("certificate refers to missing simplices".to_string());
    }
    if !mismatch.is_empty() {
        return ValidationReport {
            violations: mismatch
                .into_iter()
                .map(|detail| Violation::InputMismatch { detail })
                .collect(),
        };
    }

    let mut violations = Vec::new();
    for xi in x.ids() {
        if !action.same_orbit(xi, cert.lift(cert.p(xi))) {
            violations.push(Violation::Lift {
                simplex: cert.p(xi),
            });
        }
        for &z in x.faces_codim1(xi) {
            if !yc.faces_codim1(cert.p(xi)).contains(&cert.p(z)) {
                violations.push(Violation::OrbitMap {
                    parent: xi,
                    child: z,
                });
            }
        }
    }
    let per_y: Vec<Vec<Violation>> = yc
        .ids()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&y| {
            let mut out = Vec::new();
            let lift = cert.lift(y);
            if cert.p(lift) != y || x.dim_of(lift) != yc.dim_of(y) {
                out.push(Violation::Lift { simplex: y });
                return out;
            }
            if action.stabilizer(lift) != *t.stabilizer(y) {
                out.push(Violation::StabilizerMismatch { simplex: y });
            }
            for (&child, &tr) in yc.faces_codim1(y).iter().zip(t.transfers_of(y)) {
                let face = x
                    .faces_codim1(lift)
                    .iter()
                    .copied()
                    .find(|&z| cert.p(z) == child);
                let carried = face.map(|z| action.act_on_simplex(tr, z));
                if carried != Some(cert.lift(child)) {
                    out.push(Violation::TransferMismatch { parent: y, child });
                }
            }
            out
        })
        .collect();
    violations.extend(per_y.into_iter().flatten());
    ValidationReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_triple(k: u32) -> CompressedTriple {
        let rot = (0..k).map(|v| (v + 1) % k).collect();
        let g =
            Arc::new(FiniteGroup::from_generators(k as usize, vec![("r".into(), rot)]).unwrap());
        let y = Arc::new(SimplicialComplex::from_maximal(&[[0, 1]]).unwrap());
        let s = vec![Subgroup::trivial(k as usize); 3];
        let t = vec![vec![], vec![], vec![ElementId::IDENTITY; 2]];
        CompressedTriple::new(g, y, s, t).unwrap()
    }

    #[test]
    fn trivial_data_is_valid() {
        let t = edge_triple(3);
        assert!(validate_triple(&t).is_valid());
        assert_eq!(t.total_index(), 9);
        assert_eq!(
            t.transfer(SimplexId(2), SimplexId(1)),
            Some(ElementId::IDENTITY)
        );
        assert_eq!(t.transfer(SimplexId(2), SimplexId(2)), None);
    }

    #[test]
    fn broken_embedding_is_reported() {
        // Klein four acting on nothing in particular; S(edge) = <sigma>,
        // S(vertex 0) = <sigma>, S(vertex 1) = <tau>.
        let g = Arc::new(
            FiniteGroup::from_generators(
                5,
                vec![
                    ("sigma".into(), vec![0, 2, 1, 4, 3]),
                    ("tau".into(), vec![0, 3, 4, 1, 2]),
                ],
            )
            .unwrap(),
        );
        let sub = |m: &[u32]| Subgroup::new(&g, m.iter().map(|&i| ElementId(i)).collect()).unwrap();
        let y = Arc::new(SimplicialComplex::from_maximal(&[[0, 1]]).unwrap());
        let t = CompressedTriple::new(
            Arc::clone(&g),
            y,
            vec![sub(&[0, 1]), sub(&[0, 2]), sub(&[0, 1])],
            vec![vec![], vec![], vec![ElementId(0), ElementId(0)]],
        )
        .unwrap();
        let report = validate_triple(&t);
        assert_eq!(
            report.violations,
            vec![Violation::Embedding {
                parent: SimplexId(2),
                child: SimplexId(1),
                transfer: ElementId(0),
                element: ElementId(1),
                image: ElementId(1),
            }]
        );
    }

    #[test]
    fn documents_roundtrip() {
        let t = edge_triple(4);
        let cert = CompressionCertificate {
            orbit_map: vec![SimplexId(0); 3],
            lift: vec![SimplexId(0), SimplexId(1), SimplexId(2)],
        };
        let text = t.to_json(Some(&cert));
        let (back, back_cert) = CompressedTriple::from_json(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back_cert, Some(cert));
        assert_eq!(back.to_json(back_cert.as_ref()), text);
    }

    #[test]
    fn malformed_documents() {
        let t = edge_triple(2);
        let text = t.to_json(None);
        let truncated = &text[..text.len() / 2];
        assert!(matches!(
            CompressedTriple::from_json(truncated),
            Err(TripleError::Parse { line: 1, .. })
        ));
        let mut doc = t.to_document(None);
        doc.transfers[0] = [2, 2, 0];
        assert!(matches!(
            CompressedTriple::from_document(&doc),
            Err(TripleError::NotAFace {
                parent: 2,
                child: 2
            })
        ));
        let mut doc = t.to_document(None);
        doc.transfers.pop();
        assert!(matches!(
            CompressedTriple::from_document(&doc),
            Err(TripleError::MissingTransfer { .. })
        ));
        let mut doc = t.to_document(None);
        doc.stabilizers.pop();
        assert!(matches!(
            CompressedTriple::from_document(&doc),
            Err(TripleError::StabilizerCount { .. })
        ));
    }
}
