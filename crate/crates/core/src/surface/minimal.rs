use super::{crossings, cut_along_edges, CrossingSet, CutPiece, Dart, EdgeWalk, Surface};
use crate::error::{Error, Result};

/// A complementary region of the overlay of alpha and beta.
#[derive(Clone, Debug)]
pub struct Region {
    pub euler: i64,
    pub holes: usize,
    /// Number of alternations between alpha and beta along the region's boundary.
    pub corners: usize,
    /// The first boundary cycle as a closed walk of original darts with the
    /// region on the left.
    pub boundary_walk: Vec<Dart>,
}

impl Region {
    pub fn is_disc(&self) -> bool {
        self.euler == 1 && self.holes == 1
    }

    pub fn is_bigon(&self) -> bool {
        self.is_disc() && self.corners == 2
    }
}

#[derive(Clone, Debug)]
pub enum MinimalityWitness {
    Minimal,
    Bigon(Region),
    /// A disc bounded by a single curve.
    NullhomotopicDisc(Region),
}

impl MinimalityWitness {
    pub fn is_minimal(&self) -> bool {
        matches!(self, MinimalityWitness::Minimal)
    }
}

fn curve_masks(s: &Surface, alpha: &EdgeWalk, beta: &EdgeWalk) -> (Vec<bool>, Vec<bool>) {
    let mut a = vec![false; s.num_edges()];
    let mut b = vec![false; s.num_edges()];
    for d in alpha.darts() {
        a[d.edge()] = true;
    }
    for d in beta.darts() {
        b[d.edge()] = true;
    }
    (a, b)
}

/// Complementary regions of `alpha` and `beta`.
pub fn overlay_regions(s: &Surface, alpha: &EdgeWalk, beta: &EdgeWalk) -> Result<Vec<Region>> {
    let (a_mask, b_mask) = curve_masks(s, alpha, beta);
    let cut: Vec<bool> = a_mask.iter().zip(&b_mask).map(|(&x, &y)| x || y).collect();
    let pieces = cut_along_edges(s, &cut)?;
    Ok(pieces.iter().map(|p| region_of(p, &a_mask)).collect())
}

fn region_of(p: &CutPiece, a_mask: &[bool]) -> Region {
    let surf = &p.surface;
    let hole = (0..surf.num_faces()).find(|&f| surf.is_boundary_face(f) && p.on_cut[surf.face(f)[0].0]);
    let boundary_walk: Vec<Dart> = hole
        .map(|f| surf.face(f).iter().map(|d| p.origin[d.0]).collect())
        .unwrap_or_default();
    let n = boundary_walk.len();
    let corners = (0..n)
        .filter(|&i| a_mask[boundary_walk[i].edge()] != a_mask[boundary_walk[(i + 1) % n].edge()])
        .count();
    Region {
        euler: surf.euler_characteristic(),
        holes: surf.num_boundary_components(),
        corners,
        boundary_walk,
    }
}

/// Bigon criterion: no complementary disc with two corners and no disc
/// bounded by one curve.
pub fn is_minimal_position(s: &Surface, alpha: &EdgeWalk, beta: &EdgeWalk) -> Result<MinimalityWitness> {
    crossings(s, alpha, beta)?;
    for r in overlay_regions(s, alpha, beta)? {
        if r.is_bigon() {
            return Ok(MinimalityWitness::Bigon(r));
        }
        if r.is_disc() && r.corners == 0 {
            return Ok(MinimalityWitness::NullhomotopicDisc(r));
        }
    }
    Ok(MinimalityWitness::Minimal)
}

/// Face-walk level editing: subdivisions and chords.
#[derive(Clone, Debug)]
pub struct FaceComplex {
    pub n_edges: usize,
    pub faces: Vec<Vec<Dart>>,
    pub boundary: Vec<bool>,
}

impl FaceComplex {
    pub fn of(s: &Surface) -> FaceComplex {
        FaceComplex {
            n_edges: s.num_edges(),
            faces: s.faces().to_vec(),
            boundary: (0..s.num_faces()).map(|f| s.is_boundary_face(f)).collect(),
        }
    }

    /// Split edge `e` at a new midpoint; dart `2e` keeps the first half.
    /// Returns the new edge carrying the second half.
    pub fn subdivide(&mut self, e: usize) -> usize {
        let e2 = self.n_edges;
        self.n_edges += 1;
        let (fwd, back) = (Dart(2 * e), Dart(2 * e + 1));
        let (fwd2, back2) = (Dart(2 * e2), Dart(2 * e2 + 1));
        for w in &mut self.faces {
            let mut out = Vec::with_capacity(w.len() + 2);
            for &d in w.iter() {
                if d == fwd {
                    out.extend([fwd, fwd2]);
                } else if d == back {
                    out.extend([back2, back]);
                } else {
                    out.push(d);
                }
            }
            *w = out;
        }
        e2
    }

    /// Add an edge inside the face containing the corner after `from` and the
    /// corner after `to`, running from `head(from)` to `head(to)`.
    pub fn add_chord(&mut self, from: Dart, to: Dart) -> Result<Dart> {
        let f = self
            .faces
            .iter()
            .position(|w| w.contains(&from))
            .ok_or_else(|| Error::InvalidSurface(format!("dart {} lies in no face", from.0)))?;
        if self.boundary[f] {
            return Err(Error::Precondition("chord would cross a boundary face".into()));
        }
        let w = &self.faces[f];
        let i = w.iter().position(|&d| d == from).unwrap();
        let len = w.len();
        let rot: Vec<Dart> = (0..len).map(|k| w[(i + 1 + k) % len]).collect();
        let j = rot
            .iter()
            .position(|&d| d == to)
            .ok_or_else(|| Error::InvalidSurface("chord ends lie in different faces".into()))?;
        let k = Dart(2 * self.n_edges);
        self.n_edges += 1;
        let mut a: Vec<Dart> = rot[..=j].to_vec();
        a.push(k.partner());
        let mut b = vec![k];
        b.extend_from_slice(&rot[j + 1..]);
        self.faces[f] = a;
        self.faces.push(b);
        self.boundary.push(false);
        Ok(k)
    }

    /// Cone face `f` off a new central vertex, splitting it into triangles.
    /// Returns the first new face index.
    pub fn star(&mut self, f: usize) -> usize {
        let w = self.faces[f].clone();
        let m = w.len();
        let first = self.n_edges;
        self.n_edges += m;
        // spoke i runs from tail(w[i]) to the centre
        let spoke = |i: usize| Dart(2 * (first + i % m));
        let boundary = self.boundary[f];
        let tris: Vec<Vec<Dart>> = (0..m).map(|i| vec![w[i], spoke(i + 1), spoke(i).partner()]).collect();
        let start = self.faces.len();
        let mut it = tris.into_iter();
        self.faces[f] = it.next().unwrap();
        for t in it {
            self.faces.push(t);
            self.boundary.push(boundary);
        }
        start
    }

    pub fn build(&self) -> Result<Surface> {
        Surface::from_faces(2 * self.n_edges, self.faces.clone(), self.boundary.clone())
    }
}

pub(crate) fn remap_subdivided(darts: &[Dart], e: usize, e2: usize) -> Vec<Dart> {
    let mut out = Vec::with_capacity(darts.len() + 2);
    for &d in darts {
        if d == Dart(2 * e) {
            out.extend([Dart(2 * e), Dart(2 * e2)]);
        } else if d == Dart(2 * e + 1) {
            out.extend([Dart(2 * e2 + 1), Dart(2 * e + 1)]);
        } else {
            out.push(d);
        }
    }
    out
}

/// Curves after bigon removal, on a refined surface.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub surface: Surface,
    pub alpha: EdgeWalk,
    pub beta: EdgeWalk,
    pub tau: EdgeWalk,
    pub crossings: CrossingSet,
    pub moves: usize,
}

struct State {
    cx: FaceComplex,
    alpha: Vec<Dart>,
    beta: Vec<Dart>,
    /// The basepoint is the tail of `alpha[0]`.
    tau: Vec<Dart>,
}

impl State {
    fn subdivide(&mut self, e: usize) -> usize {
        let e2 = self.cx.subdivide(e);
        self.alpha = remap_subdivided(&self.alpha, e, e2);
        self.beta = remap_subdivided(&self.beta, e, e2);
        self.tau = remap_subdivided(&self.tau, e, e2);
        e2
    }
}

/// Push alpha across bigons until the pair is in minimal position. The
/// surface is refined (edges subdivided, chords added) along the way; `tau`
/// is carried along and re-based if the basepoint of alpha is swept away.
pub fn reduce_to_minimal(s: &Surface, alpha: &EdgeWalk, beta: &EdgeWalk, tau: &EdgeWalk) -> Result<Reduction> {
    let initial = crossings(s, alpha, beta)?;
    if let MinimalityWitness::Minimal = is_minimal_position(s, alpha, beta)? {
        return Ok(Reduction {
            surface: s.clone(),
            alpha: alpha.clone(),
            beta: beta.clone(),
            tau: tau.clone(),
            crossings: initial,
            moves: 0,
        });
    }
    let mut st = State {
        cx: FaceComplex::of(s),
        alpha: alpha.darts().to_vec(),
        beta: beta.darts().to_vec(),
        tau: tau.darts().to_vec(),
    };
    for e in 0..s.num_edges() {
        st.subdivide(e);
    }
    let cap = (st.cx.n_edges * initial.len()).max(1);
    let mut moves = 0;
    loop {
        let surf = st.cx.build()?;
        let a = EdgeWalk::closed(&surf, st.alpha.clone())?;
        let b = EdgeWalk::closed(&surf, st.beta.clone())?;
        let t = EdgeWalk::path(&surf, a.start(), st.tau.clone())?;
        match is_minimal_position(&surf, &a, &b)? {
            MinimalityWitness::Minimal => {
                let crossings = crossings(&surf, &a, &b)?;
                return Ok(Reduction {
                    surface: surf,
                    alpha: a,
                    beta: b,
                    tau: t,
                    crossings,
                    moves,
                });
            }
            MinimalityWitness::NullhomotopicDisc(_) => {
                return Err(Error::Precondition("a curve bounds a disc".into()));
            }
            MinimalityWitness::Bigon(r) => {
                if moves >= cap {
                    return Err(Error::IterationCap(cap));
                }
                bigon_move(&mut st, &surf, &r)?;
                moves += 1;
            }
        }
    }
}

fn bigon_move(st: &mut State, s: &Surface, r: &Region) -> Result<()> {
    let mut is_alpha = vec![false; s.num_edges()];
    for d in &st.alpha {
        is_alpha[d.edge()] = true;
    }
    // the boundary walk has the bigon on its left; split it into the beta
    // run b (p to q) and the alpha run (q to p)
    let w = &r.boundary_walk;
    let n = w.len();
    let start = (0..n)
        .find(|&i| !is_alpha[w[i].edge()] && is_alpha[w[(i + n - 1) % n].edge()])
        .ok_or_else(|| Error::InvalidSurface("bigon without beta side".into()))?;
    let rot: Vec<Dart> = (0..n).map(|k| w[(start + k) % n]).collect();
    let split = rot.iter().position(|d| is_alpha[d.edge()]).unwrap();
    let b: Vec<Dart> = rot[..split].to_vec();
    let alpha_run: Vec<Dart> = rot[split..].to_vec();
    let p = s.tail(b[0]);
    let q = s.head(*b.last().unwrap());

    // orient alpha so it runs p -> q along the bigon
    let reversed = st.alpha.contains(&alpha_run[0]);
    let mut alpha: Vec<Dart> = if reversed {
        st.alpha.iter().rev().map(|d| d.partner()).collect()
    } else {
        st.alpha.clone()
    };
    let la = alpha.len();
    let ip = (0..la).find(|&i| s.tail(alpha[i]) == p).unwrap();
    alpha.rotate_left(ip);
    // now alpha[0] leaves p along the bigon, alpha[..iq] is the bigon side
    let iq = (0..la).find(|&i| s.tail(alpha[i]) == q).unwrap();
    let base = s.tail(st.alpha[0]);
    let ib = (0..la).find(|&i| s.tail(alpha[i]) == base).unwrap();
    let a_side: Vec<Dart> = alpha[..iq].to_vec();
    let a_in = alpha[la - 1];
    let a_out = alpha[iq];
    let rest: Vec<Dart> = alpha[iq + 1..la - 1].to_vec();

    // crossed darts on the far side of b, in order from p to q
    let mut crossed = Vec::new();
    let mut prev_in = a_in.partner();
    crossed.push(prev_in);
    for target in b.iter().copied().chain(std::iter::once(a_out)) {
        let mut x = s.rot_next(prev_in);
        while x != target {
            crossed.push(x);
            x = s.rot_next(x);
        }
        prev_in = target.partner();
    }
    crossed.push(a_out);

    // subdivide every crossed edge; remember the halves (near, far) per crossed dart
    let v_removed = ib <= iq;
    let mut halves = Vec::with_capacity(crossed.len());
    for &c in &crossed {
        let e = c.edge();
        let e2 = st.subdivide(e);
        // dart c leaves the b-side vertex
        let (near, far) = if c.is_reversed() {
            (Dart(2 * e2 + 1), Dart(2 * e + 1))
        } else {
            (Dart(2 * e), Dart(2 * e2))
        };
        halves.push((near, far));
    }
    let mut chords = Vec::with_capacity(crossed.len() - 1);
    for i in 0..crossed.len() - 1 {
        let (_, far_i) = halves[i];
        let (near_j, _) = halves[i + 1];
        chords.push(st.cx.add_chord(far_i.partner(), near_j)?);
    }
    let (_, far_in) = halves[0];
    let (_, far_out) = halves[crossed.len() - 1];
    let mut new_alpha = vec![far_in.partner()];
    new_alpha.extend(&chords);
    new_alpha.push(far_out);
    new_alpha.extend(rest);

    // position of the basepoint along the new alpha: a swept basepoint moves
    // to the first new midpoint, tau following it back across the bigon
    let pos = if v_removed {
        let (near_in, _) = halves[0];
        let mut tau = vec![near_in.partner()];
        tau.extend_from_slice(&a_side[..ib]);
        tau.extend(&st.tau);
        st.tau = free_reduce(tau);
        1
    } else if ib == la - 1 {
        0
    } else {
        chords.len() + 2 + (ib - iq - 1)
    };
    let len = new_alpha.len();
    let pos = if reversed {
        new_alpha = new_alpha.iter().rev().map(|d| d.partner()).collect();
        (len - pos) % len
    } else {
        pos
    };
    new_alpha.rotate_left(pos);
    st.alpha = new_alpha;
    Ok(())
}

fn free_reduce(darts: Vec<Dart>) -> Vec<Dart> {
    let mut out: Vec<Dart> = Vec::with_capacity(darts.len());
    for d in darts {
        if out.last() == Some(&d.partner()) {
            out.pop();
        } else {
            out.push(d);
        }
    }
    out
}
