//! Tables of holomorphic-part coefficients `c(m, μ) = −(1/r)·log|α(m, μ)|` of the harmonic
//! Maass forms attached to binary negative definite lattices, with `α` stored exactly in a
//! number field with a pinned complex embedding.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::bigreal::BigReal;
use crate::arith::numfield::{EmbeddingBox, NFElem, NumberField};
use crate::arith::poly::QPoly;
use crate::arith::rational::{frac, int, parse_rational, Rational};
use crate::discforms::{DiscGroup, EvenLattice};
use crate::error::{Error, Result};

/// A rational written either as `[num, den]`, as an integer, or as a decimal/fraction string.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonRational {
    /// `[numerator, denominator]`.
    Pair(i64, i64),
    /// An integer.
    Int(i64),
    /// `"p/q"` or a decimal literal.
    Text(String),
}

impl JsonRational {
    fn value(&self) -> Result<Rational> {
        match self {
            JsonRational::Pair(_, 0) => Err(Error::Data("zero denominator".into())),
            JsonRational::Pair(n, d) => Ok(Rational::new((*n).into(), (*d).into())),
            JsonRational::Int(n) => Ok(int(*n)),
            JsonRational::Text(s) => parse_rational(s).map_err(|_| Error::Data(format!("bad rational {s:?}"))),
        }
    }

    fn from_rational(r: &Rational) -> Result<Self> {
        let n = i64::try_from(r.numer()).map_err(|_| Error::Data("numerator exceeds i64".into()))?;
        let d = i64::try_from(r.denom()).map_err(|_| Error::Data("denominator exceeds i64".into()))?;
        Ok(JsonRational::Pair(n, d))
    }
}

/// On-disk field description.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldFile {
    /// Monic minimal polynomial, constant term first.
    pub minpoly: Vec<i64>,
    /// Disc isolating the embedded root.
    pub embedding: EmbeddingFile,
}

/// On-disk embedding disc.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EmbeddingFile {
    /// Real part of the centre.
    pub re: JsonRational,
    /// Imaginary part of the centre.
    pub im: JsonRational,
    /// Radius.
    pub radius: JsonRational,
}

/// On-disk lattice description: Gram matrix and, optionally, the generators fixing the labels.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeFile {
    /// Gram matrix of the (negative definite) lattice.
    pub gram: Vec<Vec<i64>>,
    /// Generators of `N'/N` in basis coordinates.
    #[serde(default)]
    pub generators: Option<Vec<Vec<JsonRational>>>,
    /// Their orders.
    #[serde(default)]
    pub orders: Option<Vec<u64>>,
}

/// One on-disk entry.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryFile {
    /// Exponent `m`.
    pub m: JsonRational,
    /// Coordinates of `μ` with respect to the generators.
    pub mu: Vec<u64>,
    /// Power-basis coordinates of `α(m, μ)`.
    pub alpha: Vec<JsonRational>,
}

/// The JSON table format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableFile {
    /// Coefficient field.
    pub field: FieldFile,
    /// Scaling `r` in `c = −(1/r) log|α|`.
    pub r: u32,
    /// The lattice indexing the coefficients.
    pub lattice: LatticeFile,
    /// Entries.
    pub entries: Vec<EntryFile>,
    /// Free-text source note.
    #[serde(default)]
    pub provenance: String,
}

/// A validated coefficient table.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    /// Field containing the `α(m, μ)`, with the embedding used for evaluation.
    pub field: Arc<NumberField>,
    /// Scaling `r`.
    pub r: u32,
    /// The lattice `N` (or `N_Δ`).
    pub lattice: EvenLattice,
    /// Its discriminant group, labelled by the table's generators.
    pub group: DiscGroup,
    /// `α` keyed by `(m, folded index of ±μ)`.
    pub entries: BTreeMap<(Rational, usize), NFElem>,
    /// Source note.
    pub provenance: String,
}

/// Parses and validates a table from JSON text.
pub fn parse_table(text: &str) -> Result<CoefficientTable> {
    let file: TableFile = serde_json::from_str(text).map_err(|e| Error::Data(format!("table schema: {e}")))?;
    table_from_file(&file)
}

/// Reads, parses and validates a table file.
pub fn load_table(path: impl AsRef<Path>) -> Result<CoefficientTable> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
    parse_table(&text)
}

/// Validates a parsed table: irreducible field polynomial, well-isolated embedding,
/// `m ≡ Q(μ) (mod 1)` for every entry, no duplicates under `μ ↦ −μ`, `α ≠ 0`.
pub fn table_from_file(file: &TableFile) -> Result<CoefficientTable> {
    let emb = EmbeddingBox {
        re: file.field.embedding.re.value()?,
        im: file.field.embedding.im.value()?,
        radius: file.field.embedding.radius.value()?,
    };
    let field = NumberField::new(file.field.minpoly.iter().map(|&c| BigInt::from(c)).collect(), emb)?;
    if file.r == 0 {
        return Err(Error::Data("scaling r must be positive".into()));
    }
    let lattice = EvenLattice::new(file.lattice.gram.clone())?;
    let group = match (&file.lattice.generators, &file.lattice.orders) {
        (Some(g), Some(o)) => {
            let gens = g.iter().map(|v| v.iter().map(JsonRational::value).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
            DiscGroup::with_generators(&lattice, gens, o.clone())?
        }
        (None, None) => lattice.discriminant_group()?,
        _ => return Err(Error::Data("lattice generators and orders must be given together".into())),
    };
    let mut entries = BTreeMap::new();
    for e in &file.entries {
        let m = e.m.value()?;
        let idx = group
            .index_of_coords(&e.mu.iter().map(|&c| c as i64).collect::<Vec<_>>())
            .ok_or_else(|| Error::Data(format!("μ = {:?} does not match the generator orders {:?}", e.mu, group.generator_orders())))?;
        if frac(&m) != *group.q(idx) {
            return Err(Error::Data(format!("entry m = {m}, μ = {:?}: Q(μ) = {} mod 1 differs", e.mu, group.q(idx))));
        }
        let coords = e.alpha.iter().map(JsonRational::value).collect::<Result<Vec<_>>>()?;
        if coords.len() > field.degree() {
            return Err(Error::Data(format!("α has {} coordinates, field degree {}", coords.len(), field.degree())));
        }
        let alpha = NFElem::new(&field, coords);
        if alpha.is_zero() {
            return Err(Error::Data(format!("α(m = {m}, μ = {:?}) is zero", e.mu)));
        }
        if entries.insert((m.clone(), group.fold(idx)), alpha).is_some() {
            return Err(Error::Data(format!("duplicate entry m = {m}, ±μ = {:?}", e.mu)));
        }
    }
    Ok(CoefficientTable { field, r: file.r, lattice, group, entries, provenance: file.provenance.clone() })
}

impl CoefficientTable {
    /// Smallest stored exponent (coefficients below it vanish by convention).
    pub fn min_index(&self) -> Option<&Rational> {
        self.entries.keys().map(|(m, _)| m).min()
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// `true` if there are no entries.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Group index of the generator coordinates `mu`.
    pub fn index_of_coords(&self, mu: &[u64]) -> Option<usize> {
        self.group.index_of_coords(&mu.iter().map(|&c| c as i64).collect::<Vec<_>>())
    }

    /// Serializes back to the JSON format.
    pub fn to_file(&self) -> Result<TableFile> {
        let r = |x: &Rational| JsonRational::from_rational(x);
        let emb = self.field.embedding();
        let entries = self
            .entries
            .iter()
            .map(|((m, idx), a)| {
                Ok(EntryFile {
                    m: r(m)?,
                    mu: self.group.coords(*idx).0.clone(),
                    alpha: a.coords().iter().map(r).collect::<Result<Vec<_>>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TableFile {
            field: FieldFile {
                minpoly: self
                    .field
                    .minpoly()
                    .iter()
                    .map(|c| i64::try_from(c).map_err(|_| Error::Data("coefficient exceeds i64".into())))
                    .collect::<Result<_>>()?,
                embedding: EmbeddingFile { re: r(&emb.re)?, im: r(&emb.im)?, radius: r(&emb.radius)? },
            },
            r: self.r,
            lattice: LatticeFile {
                gram: self.lattice.gram().to_vec(),
                generators: Some(
                    self.group.generators().iter().map(|g| g.iter().map(r).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?,
                ),
                orders: Some(self.group.generator_orders().to_vec()),
            },
            entries,
            provenance: self.provenance.clone(),
        })
    }
}

/// `c(m, μ) = −(1/r)·log|α(m, μ)|` at `prec` bits, `μ` given by its group index.
///
/// Exponents below the smallest stored one give 0 (the table's normalization); any other
/// index missing from the table is [`Error::TableIncomplete`].
pub fn maass_coefficient(t: &CoefficientTable, m: &Rational, mu: usize, prec: u32) -> Result<BigReal> {
    if mu >= t.group.order() {
        return Err(Error::InvalidInput(format!("μ index {mu} outside a group of order {}", t.group.order())));
    }
    match t.entries.get(&(m.clone(), t.group.fold(mu))) {
        Some(alpha) => {
            let l = alpha.log_abs(prec)?;
            Ok(&BigReal::from_rational(&Rational::new((-1).into(), t.r.into()), prec) * &l)
        }
        None => match t.min_index() {
            Some(lo) if m < lo => Ok(BigReal::from_i64(0, prec)),
            None => Err(Error::TableIncomplete(format!("table is empty; c({m}, μ#{mu}) unknown"))),
            _ => Err(Error::TableIncomplete(format!("c({m}, {:?}) is not in the table", t.group.coords(mu).0))),
        },
    }
}

/// A field automorphism (image of the generator) combined with a change of embedding.
///
/// For a non-normal field an element of the Galois group of the normal closure acts on
/// values `|σ(α)|` through the choice of embedding; `image = x` with a re-pinned root
/// realizes it.
#[derive(Clone, Debug)]
pub struct GaloisMove {
    /// Image of the generator as a polynomial in the generator.
    pub image: QPoly,
    /// New embedding centre, if the embedding moves.
    pub repin: Option<(f64, f64)>,
}

impl GaloisMove {
    /// The identity.
    pub fn identity() -> Self {
        GaloisMove { image: QPoly::x(), repin: None }
    }

    /// Keeps the coordinates and moves the embedding to the root nearest `(re, im)`.
    pub fn repin(re: f64, im: f64) -> Self {
        GaloisMove { image: QPoly::x(), repin: Some((re, im)) }
    }
}

/// Applies `σ` entrywise and re-pins the embedding.
pub fn galois_act(t: &CoefficientTable, sigma: &GaloisMove) -> Result<CoefficientTable> {
    let p = t.field.poly();
    if !p.compose(&sigma.image).rem(p).is_zero() {
        return Err(Error::InvalidInput(format!("{} is not a root of {}", sigma.image.render("x"), p.render("x"))));
    }
    let field = match sigma.repin {
        Some((re, im)) => t.field.repinned(re, im)?,
        None => t.field.clone(),
    };
    let entries = t.entries.iter().map(|(k, a)| (k.clone(), a.substitute(&sigma.image).in_field(&field))).collect();
    Ok(CoefficientTable { field, entries, ..t.clone() })
}
