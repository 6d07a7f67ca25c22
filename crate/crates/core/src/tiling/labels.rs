use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::packing::{enumerate_ford, enumerate_hecke, hecke_base_cusps, HoroPacking, PackingScalar, PackingSource};
use super::TilingError;
use crate::algebra::{DyadicRes, GoldenInt};
use crate::geom::Cusp;
use crate::treeaction::Gen;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Triangular,
    Pentagonal,
}

impl Model {
    pub fn cell_size(self) -> usize {
        match self {
            Model::Triangular => 3,
            Model::Pentagonal => 5,
        }
    }

    /// Factor by which the fixed sum changes when every index shifts by one.
    pub fn sum_factor(self) -> i64 {
        self.cell_size() as i64
    }
}

/// Scalar types that know which tiling model they carry and how to rebuild
/// their packing from its description.
pub trait ModelScalar: PackingScalar {
    const MODEL: Model;
    fn rebuild(source: &PackingSource) -> Result<HoroPacking<Self>, TilingError>;
    /// Cusps of the base cell, clockwise from the outgoing edge.
    fn base_cusps() -> Vec<Cusp<Self::Field>>;
}

impl ModelScalar for BigInt {
    const MODEL: Model = Model::Triangular;

    fn rebuild(source: &PackingSource) -> Result<HoroPacking<BigInt>, TilingError> {
        match *source {
            PackingSource::Ford { q_max, window } => enumerate_ford(q_max, window),
            _ => Err(TilingError::Format("triangular model needs a Ford packing".into())),
        }
    }

    fn base_cusps() -> Vec<Cusp<num_rational::BigRational>> {
        let q = |n: i64| Cusp::Finite(num_rational::BigRational::from_integer(n.into()));
        vec![Cusp::Infinity, q(1), q(0)]
    }
}

impl ModelScalar for GoldenInt {
    const MODEL: Model = Model::Pentagonal;

    fn rebuild(source: &PackingSource) -> Result<HoroPacking<GoldenInt>, TilingError> {
        match *source {
            PackingSource::Hecke { max_word_len, window } => enumerate_hecke(max_word_len, window),
            _ => Err(TilingError::Format("pentagonal model needs a Hecke packing".into())),
        }
    }

    fn base_cusps() -> Vec<Cusp<crate::algebra::GoldenRational>> {
        let mut c = hecke_base_cusps().to_vec();
        c.reverse();
        c
    }
}

/// A cell with a distinguished outgoing side. Labels are read clockwise
/// starting at `start`, so the outgoing side joins `start` and the member
/// before it in counterclockwise order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct State {
    pub cell: usize,
    pub start: usize,
}

/// Indices of a neighbouring cell from those of a cell.
///
/// `x` lists a cell clockwise starting at the shared side `x0 x1`; the result
/// lists the neighbour counterclockwise starting at the same horoball `x0`.
pub fn neighbor_values(x: &[DyadicRes], k: i64) -> Vec<DyadicRes> {
    match x.len() {
        3 => vec![x[0].add_int(1), x[1].add_int(-1), x[2]],
        5 => vec![x[0].add_int(1), x[1].add_int(-1), x[2].add_int(-k), x[3], x[4].add_int(k)],
        n => panic!("cells have 3 or 5 members, not {n}"),
    }
}

/// A depth-`N` labelled approximant: a packing with a dyadic index on each
/// horoball reached from the base cell.
///
/// The index stored for a horoball is its value at position 0 of its frame;
/// the value seen from a cell at position `n` is `index + n`.
#[derive(Clone, Debug)]
pub struct LabeledApprox<S: ModelScalar> {
    packing: HoroPacking<S>,
    w: DyadicRes,
    k: i64,
    base: State,
    base_labels: Vec<DyadicRes>,
    indices: Vec<Option<DyadicRes>>,
    labeled_cells: Vec<bool>,
}

type SideMap = HashMap<(usize, usize), Vec<usize>>;

fn side_map(cells: &[Vec<usize>]) -> SideMap {
    let mut map: SideMap = HashMap::new();
    for (c, members) in cells.iter().enumerate() {
        let n = members.len();
        for i in 0..n {
            let (a, b) = (members[i], members[(i + 1) % n]);
            map.entry((a.min(b), a.max(b))).or_default().push(c);
        }
    }
    map
}

fn slot(members: &[usize], h: usize) -> usize {
    members.iter().position(|&m| m == h).expect("member of cell")
}

impl<S: ModelScalar> LabeledApprox<S> {
    /// The base state of the packing: triangle `(0, 1, ∞)` or the pentagon
    /// `(0, λ-1, 1, λ, ∞)`, leaving through the side from `∞` clockwise.
    pub fn base_state(packing: &HoroPacking<S>) -> Result<State, TilingError> {
        let cusps = S::base_cusps();
        let members = cusps
            .iter()
            .map(|c| packing.find(c))
            .collect::<Option<Vec<_>>>()
            .ok_or(TilingError::MissingBase)?;
        let cell = packing.find_cell(&members).ok_or(TilingError::MissingBase)?;
        Ok(State { cell, start: slot(&packing.cells()[cell], members[0]) })
    }

    /// Propagates indices from the base state across shared sides.
    ///
    /// `base` holds the first `n - 1` clockwise labels of the base cell; the
    /// last one follows from the fixed sum `w`.
    pub fn assign(
        packing: HoroPacking<S>,
        w: DyadicRes,
        k: i64,
        base: &[DyadicRes],
    ) -> Result<Self, TilingError> {
        let n = S::MODEL.cell_size();
        if base.len() != n - 1 {
            return Err(TilingError::BadParameter(format!("expected {} base labels, got {}", n - 1, base.len())));
        }
        if S::MODEL == Model::Triangular && k != 0 {
            return Err(TilingError::BadParameter("the triangular model has k = 0".into()));
        }
        for x in base {
            if x.precision() != w.precision() {
                return Err(crate::algebra::AlgebraError::PrecisionMismatch {
                    left: w.precision(),
                    right: x.precision(),
                }
                .into());
            }
        }
        let state = Self::base_state(&packing)?;
        let mut labels = base.to_vec();
        labels.push(base.iter().fold(w, |acc, x| acc - *x));

        let cells = packing.cells();
        let sides = side_map(cells);
        let mut values: Vec<Option<Vec<DyadicRes>>> = vec![None; cells.len()];
        let mut first = vec![labels[0]; n];
        for (i, &x) in labels.iter().enumerate() {
            first[(state.start + n - i) % n] = x;
        }
        values[state.cell] = Some(first);
        let mut queue = VecDeque::from([state.cell]);
        while let Some(c) = queue.pop_front() {
            let v = values[c].clone().expect("queued cells are labelled");
            let members = &cells[c];
            for i in 0..n {
                let (hi, hj) = (members[i], members[(i + 1) % n]);
                for &d in &sides[&(hi.min(hj), hi.max(hj))] {
                    if d == c {
                        continue;
                    }
                    let x: Vec<DyadicRes> = (0..n).map(|j| v[(i + 1 + n - j) % n]).collect();
                    let y = neighbor_values(&x, k);
                    let t = slot(&cells[d], hj);
                    if cells[d][(t + 1) % n] != hi {
                        return Err(TilingError::Inconsistent(format!("cells {c} and {d} share a side with equal orientation")));
                    }
                    let mut yv = vec![y[0]; n];
                    for (j, &val) in y.iter().enumerate() {
                        yv[(t + j) % n] = val;
                    }
                    match &values[d] {
                        Some(old) if *old != yv => {
                            return Err(TilingError::Inconsistent(format!("cell {d} reached with two labellings")));
                        }
                        Some(_) => {}
                        None => {
                            values[d] = Some(yv);
                            queue.push_back(d);
                        }
                    }
                }
            }
        }

        let mut indices: Vec<Option<DyadicRes>> = vec![None; packing.len()];
        for (c, v) in values.iter().enumerate() {
            let Some(v) = v else { continue };
            for (j, &h) in cells[c].iter().enumerate() {
                let r = v[j].add_int(-packing.position(c, h));
                match indices[h] {
                    Some(old) if old != r => {
                        return Err(TilingError::Inconsistent(format!(
                            "horoball {} gets index {} and {}",
                            packing.horoballs()[h],
                            old.signed(),
                            r.signed()
                        )));
                    }
                    _ => indices[h] = Some(r),
                }
            }
        }
        let labeled_cells = values.iter().map(Option::is_some).collect();
        let out = LabeledApprox { packing, w, k, base: state, base_labels: base.to_vec(), indices, labeled_cells };
        out.validate()?;
        Ok(out)
    }

    pub fn packing(&self) -> &HoroPacking<S> {
        &self.packing
    }
    pub fn model(&self) -> Model {
        S::MODEL
    }
    pub fn w(&self) -> DyadicRes {
        self.w
    }
    pub fn k(&self) -> i64 {
        self.k
    }
    pub fn precision(&self) -> u32 {
        self.w.precision()
    }
    pub fn base(&self) -> State {
        self.base
    }
    pub fn base_labels(&self) -> &[DyadicRes] {
        &self.base_labels
    }
    /// Index of each horoball, `None` where no labelled cell reaches it.
    pub fn indices(&self) -> &[Option<DyadicRes>] {
        &self.indices
    }
    pub fn is_labeled(&self, cell: usize) -> bool {
        self.labeled_cells[cell]
    }

    /// Value of a horoball as seen from a cell containing it.
    pub fn value(&self, cell: usize, horoball: usize) -> Option<DyadicRes> {
        self.indices[horoball].map(|r| r.add_int(self.packing.position(cell, horoball)))
    }

    /// Counterclockwise values of a labelled cell.
    pub fn cell_values(&self, cell: usize) -> Option<Vec<DyadicRes>> {
        self.packing.cells()[cell].iter().map(|&h| self.value(cell, h)).collect()
    }

    /// Clockwise labels of a state, starting at the left end of its outgoing side.
    pub fn state_labels(&self, s: State) -> Option<Vec<DyadicRes>> {
        let v = self.cell_values(s.cell)?;
        let n = v.len();
        Some((0..n).map(|i| v[(s.start + n - i) % n]).collect())
    }

    /// Moves a state by one generator letter. `L` crosses the outgoing side
    /// and turns left; `C` (or `P`) turns in place. Returns `None` when the
    /// move leaves the approximant.
    pub fn step(&self, s: State, g: Gen, inverse: bool) -> Option<State> {
        let cells = self.packing.cells();
        let n = cells[s.cell].len();
        let members = &cells[s.cell];
        match (g, inverse) {
            (Gen::C, _) | (Gen::P, _) => {
                let ok = (g == Gen::C) == (n == 3);
                ok.then(|| State {
                    cell: s.cell,
                    start: if inverse { (s.start + n - 1) % n } else { (s.start + 1) % n },
                })
            }
            (Gen::L, false) => {
                let (h0, h1) = (members[s.start], members[(s.start + n - 1) % n]);
                let d = self.other_cell(s.cell, h0, h1)?;
                Some(State { cell: d, start: slot(&cells[d], h0) })
            }
            (Gen::L, true) => {
                let (h0, h1) = (members[s.start], members[(s.start + 1) % n]);
                let d = self.other_cell(s.cell, h0, h1)?;
                Some(State { cell: d, start: slot(&cells[d], h0) })
            }
            (Gen::R, _) => None,
        }
    }

    fn other_cell(&self, c: usize, h0: usize, h1: usize) -> Option<usize> {
        self.packing.cells_on_side(h0, h1).into_iter().find(|&d| d != c)
    }

    /// Checks the fixed sum on every labelled cell and the neighbour rule
    /// across every side between labelled cells.
    pub fn validate(&self) -> Result<(), TilingError> {
        let cells = self.packing.cells();
        let n = S::MODEL.cell_size();
        let values: Vec<Option<Vec<DyadicRes>>> = (0..cells.len())
            .map(|c| if self.labeled_cells[c] { self.cell_values(c) } else { None })
            .collect();
        for (c, v) in values.iter().enumerate() {
            if self.labeled_cells[c] && v.is_none() {
                return Err(TilingError::Inconsistent(format!("cell {c} has an unindexed horoball")));
            }
            if let Some(v) = v {
                let sum = v.iter().fold(DyadicRes::zero(self.precision())?, |acc, x| acc + *x);
                if sum != self.w {
                    return Err(TilingError::Invalid(format!(
                        "cell {c} sums to {} instead of {}",
                        sum.signed(),
                        self.w.signed()
                    )));
                }
            }
        }
        for (&(a, b), cs) in &side_map(cells) {
            if cs.len() != 2 {
                continue;
            }
            let (c, d) = (cs[0], cs[1]);
            let (Some(vc), Some(vd)) = (&values[c], &values[d]) else { continue };
            let i = slot(&cells[c], a);
            // orient the side counterclockwise in c
            let i = if cells[c][(i + 1) % n] == b { i } else { (i + n - 1) % n };
            let x: Vec<DyadicRes> = (0..n).map(|j| vc[(i + 1 + n - j) % n]).collect();
            let y = neighbor_values(&x, self.k);
            let t = slot(&cells[d], cells[c][(i + 1) % n]);
            let actual: Vec<DyadicRes> = (0..n).map(|j| vd[(t + j) % n]).collect();
            if y != actual {
                return Err(TilingError::Invalid(format!("neighbour rule fails between cells {c} and {d}")));
            }
        }
        let labels = self.state_labels(self.base).ok_or(TilingError::MissingBase)?;
        if labels[..n - 1] != self.base_labels[..] {
            return Err(TilingError::Invalid("base labels do not match the indices".into()));
        }
        Ok(())
    }

    /// Adds `e` to every index. The result has fixed sum `w + 3e`
    /// (pentagonal: `w + 5e`) and the same horoballs.
    pub fn conjugate_shift(&self, e: DyadicRes) -> Result<Self, TilingError> {
        if e.precision() != self.precision() {
            return Err(crate::algebra::AlgebraError::PrecisionMismatch {
                left: self.precision(),
                right: e.precision(),
            }
            .into());
        }
        let mut out = self.clone();
        out.w = self.w + e.scale(S::MODEL.sum_factor());
        for x in out.indices.iter_mut().flatten() {
            *x = *x + e;
        }
        for x in &mut out.base_labels {
            *x = *x + e;
        }
        Ok(out)
    }

    /// Same packing with all indices reduced to a lower precision.
    pub fn truncate(&self, precision: u32) -> Result<Self, TilingError> {
        let mut out = self.clone();
        out.w = self.w.truncate(precision)?;
        for x in out.indices.iter_mut().flatten() {
            *x = x.truncate(precision)?;
        }
        for x in &mut out.base_labels {
            *x = x.truncate(precision)?;
        }
        Ok(out)
    }

    /// Deterministic JSON form, horoballs ordered by tangent point.
    pub fn to_json(&self) -> Value {
        let cusp = |c: &Cusp<S::Field>| match c {
            Cusp::Infinity => json!("inf"),
            Cusp::Finite(x) => S::field_to_json(x),
        };
        let horoballs: Vec<Value> = self
            .packing
            .horoballs()
            .iter()
            .zip(&self.indices)
            .map(|(h, idx)| {
                json!({
                    "tangent": cusp(h.tangent()),
                    "diameter": S::field_to_json(h.size()),
                    "index": idx,
                })
            })
            .collect();
        let cells = self.packing.cells();
        let n = S::MODEL.cell_size();
        let base_cusps: Vec<Value> = (0..n)
            .map(|i| {
                let h = cells[self.base.cell][(self.base.start + n - i) % n];
                cusp(self.packing.horoballs()[h].tangent())
            })
            .collect();
        json!({
            "model": S::MODEL,
            "w": self.w,
            "k": self.k,
            "precision": self.precision(),
            "packing": self.packing.source(),
            "base": { "cusps": base_cusps, "labels": self.base_labels },
            "horoballs": horoballs,
            "depth": self.precision(),
        })
    }

    /// Parses the JSON form, rebuilds the packing from its description and
    /// revalidates every invariant.
    pub fn from_json(v: &Value) -> Result<Self, TilingError> {
        let fmt = |m: &str| TilingError::Format(m.to_string());
        let model: Model = serde_json::from_value(v.get("model").cloned().ok_or(fmt("missing model"))?)
            .map_err(|e| fmt(&e.to_string()))?;
        if model != S::MODEL {
            return Err(fmt("model does not match the scalar type"));
        }
        let de = |key: &str| v.get(key).cloned().ok_or_else(|| fmt(&format!("missing {key}")));
        let w: DyadicRes = serde_json::from_value(de("w")?).map_err(|e| fmt(&e.to_string()))?;
        let k: i64 = serde_json::from_value(de("k")?).map_err(|e| fmt(&e.to_string()))?;
        let precision: u32 = serde_json::from_value(de("precision")?).map_err(|e| fmt(&e.to_string()))?;
        if precision != w.precision() {
            return Err(fmt("precision does not match w"));
        }
        let source: PackingSource = serde_json::from_value(de("packing")?).map_err(|e| fmt(&e.to_string()))?;
        let base = de("base")?;
        let base_labels: Vec<DyadicRes> =
            serde_json::from_value(base.get("labels").cloned().ok_or(fmt("missing base labels"))?)
                .map_err(|e| fmt(&e.to_string()))?;
        let packing = S::rebuild(&source)?;
        let listed = de("horoballs")?;
        let listed = listed.as_array().ok_or(fmt("horoballs must be a list"))?;
        if listed.len() != packing.len() {
            return Err(fmt("horoball list does not match the packing description"));
        }
        let mut indices = Vec::with_capacity(listed.len());
        for (entry, h) in listed.iter().zip(packing.horoballs()) {
            let tangent = match entry.get("tangent") {
                Some(Value::String(s)) if s == "inf" => Cusp::Infinity,
                Some(x) => Cusp::Finite(S::field_from_json(x).map_err(|e| fmt(&e))?),
                None => return Err(fmt("missing tangent")),
            };
            let diameter = S::field_from_json(entry.get("diameter").ok_or(fmt("missing diameter"))?)
                .map_err(|e| fmt(&e))?;
            if &tangent != h.tangent() || &diameter != h.size() {
                return Err(fmt(&format!("horoball at {} does not match the packing", h.tangent())));
            }
            let idx: Option<DyadicRes> = serde_json::from_value(entry.get("index").cloned().unwrap_or(Value::Null))
                .map_err(|e| fmt(&e.to_string()))?;
            if idx.is_some_and(|x| x.precision() != precision) {
                return Err(fmt("index precision differs from w"));
            }
            indices.push(idx);
        }
        let state = Self::base_state(&packing)?;
        let labeled_cells = packing
            .cells()
            .iter()
            .map(|members| members.iter().all(|&h| indices[h].is_some()))
            .collect();
        let out = LabeledApprox { packing, w, k, base: state, base_labels, indices, labeled_cells };
        out.validate()?;
        Ok(out)
    }
}

/// Either kind of approximant, as read from a file.
#[derive(Clone, Debug)]
pub enum AnyApprox {
    Triangular(LabeledApprox<BigInt>),
    Pentagonal(LabeledApprox<GoldenInt>),
}

impl AnyApprox {
    pub fn from_json(v: &Value) -> Result<Self, TilingError> {
        match v.get("model").and_then(Value::as_str) {
            Some("triangular") => Ok(AnyApprox::Triangular(LabeledApprox::from_json(v)?)),
            Some("pentagonal") => Ok(AnyApprox::Pentagonal(LabeledApprox::from_json(v)?)),
            _ => Err(TilingError::Format("model must be triangular or pentagonal".into())),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyApprox::Triangular(t) => t.to_json(),
            AnyApprox::Pentagonal(t) => t.to_json(),
        }
    }

    pub fn conjugate_shift(&self, e: DyadicRes) -> Result<Self, TilingError> {
        Ok(match self {
            AnyApprox::Triangular(t) => AnyApprox::Triangular(t.conjugate_shift(e)?),
            AnyApprox::Pentagonal(t) => AnyApprox::Pentagonal(t.conjugate_shift(e)?),
        })
    }

    pub fn w(&self) -> DyadicRes {
        match self {
            AnyApprox::Triangular(t) => t.w(),
            AnyApprox::Pentagonal(t) => t.w(),
        }
    }

    pub fn precision(&self) -> u32 {
        self.w().precision()
    }
}
