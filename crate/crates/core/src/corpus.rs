//! Bundled example surfaces and curve pairs, and a seeded generator of
//! random curve pairs.
//!
//! Surfaces are assembled from square-grid tori: each torus is a `w x h`
//! grid with opposite sides identified, and tori are joined by deleting one
//! square from each and gluing the two square holes. Curves are written as
//! moves (`R`, `L`, `U`, `D`) on one torus's grid.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::homology::H1Space;
use crate::surface::{
    crossings, cut_along, cut_along_edges, reduce_to_minimal, CurveArcTriple, Dart, EdgeWalk, InputSpec, Surface,
};

#[derive(Clone, Debug)]
struct GridTorus {
    w: usize,
    h: usize,
    /// Global dart for each local dart.
    darts: Vec<Dart>,
    /// Global face index of each square, `None` once deleted.
    faces: Vec<Option<usize>>,
}

impl GridTorus {
    fn vertex(&self, x: i64, y: i64) -> usize {
        let x = x.rem_euclid(self.w as i64) as usize;
        let y = y.rem_euclid(self.h as i64) as usize;
        y * self.w + x
    }

    fn horizontal(&self, x: i64, y: i64) -> usize {
        2 * self.vertex(x, y)
    }

    fn vertical(&self, x: i64, y: i64) -> usize {
        2 * self.vertex(x, y) + 1
    }

    /// Local dart for a unit move from `(x, y)`.
    fn step(&self, x: i64, y: i64, m: char) -> Result<(Dart, i64, i64)> {
        Ok(match m {
            'R' => (Dart::new(self.horizontal(x, y), false), x + 1, y),
            'L' => (Dart::new(self.horizontal(x - 1, y), true), x - 1, y),
            'U' => (Dart::new(self.vertical(x, y), false), x, y + 1),
            'D' => (Dart::new(self.vertical(x, y - 1), true), x, y - 1),
            other => return Err(Error::Parse(format!("unknown move {other:?}"))),
        })
    }

    /// Counterclockwise boundary of the square with lower left corner `(x, y)`.
    fn square(&self, x: i64, y: i64) -> [Dart; 4] {
        [
            Dart::new(self.horizontal(x, y), false),
            Dart::new(self.vertical(x + 1, y), false),
            Dart::new(self.horizontal(x, y + 1), true),
            Dart::new(self.vertical(x, y), true),
        ]
    }
}

/// Surfaces glued from grid tori.
#[derive(Clone, Debug, Default)]
pub struct Patchwork {
    n_edges: usize,
    faces: Vec<Option<Vec<Dart>>>,
    boundary: Vec<bool>,
    tori: Vec<GridTorus>,
}

/// A built patchwork: the surface and the map from patchwork darts.
#[derive(Clone, Debug)]
pub struct Assembled {
    pub surface: Surface,
    remap: HashMap<Dart, Dart>,
}

impl Assembled {
    pub fn darts(&self, darts: &[Dart]) -> Result<Vec<Dart>> {
        darts
            .iter()
            .map(|d| {
                self.remap
                    .get(d)
                    .copied()
                    .ok_or_else(|| Error::InvalidWalk(format!("dart {} was glued away", d.0)))
            })
            .collect()
    }

    pub fn closed(&self, darts: &[Dart]) -> Result<EdgeWalk> {
        EdgeWalk::closed(&self.surface, self.darts(darts)?)
    }

    /// Triple with tau the shortest path between the basepoints.
    pub fn triple(&self, alpha: &[Dart], beta: &[Dart]) -> Result<CurveArcTriple> {
        let a = self.closed(alpha)?;
        let b = self.closed(beta)?;
        let tau = EdgeWalk::path(
            &self.surface,
            a.start(),
            self.surface.shortest_path(a.start(), b.start()),
        )?;
        CurveArcTriple::new(self.surface.clone(), a, b, tau)
    }
}

fn moves(s: &str) -> impl Iterator<Item = char> + '_ {
    s.chars().filter(|c| !c.is_whitespace())
}

impl Patchwork {
    pub fn new() -> Patchwork {
        Patchwork::default()
    }

    /// Add a `w x h` grid torus; returns its index.
    pub fn torus(&mut self, w: usize, h: usize) -> usize {
        assert!(w >= 2 && h >= 2, "grid torus needs at least 2 x 2 squares");
        let offset = self.n_edges;
        self.n_edges += 2 * w * h;
        let mut t = GridTorus {
            w,
            h,
            darts: (0..4 * w * h).map(|i| Dart(2 * offset + i)).collect(),
            faces: Vec::with_capacity(w * h),
        };
        for y in 0..h as i64 {
            for x in 0..w as i64 {
                let walk = t.square(x, y).iter().map(|d| t.darts[d.0]).collect();
                t.faces.push(Some(self.faces.len()));
                self.faces.push(Some(walk));
                self.boundary.push(false);
            }
        }
        self.tori.push(t);
        self.tori.len() - 1
    }

    fn face_index(&self, t: usize, x: i64, y: i64) -> Result<usize> {
        let g = &self.tori[t];
        g.faces[g.vertex(x, y)].ok_or_else(|| Error::Precondition(format!("square ({x}, {y}) of torus {t} is gone")))
    }

    /// Delete square `a` of torus `ta` and square `b` of torus `tb` and glue
    /// the two holes.
    pub fn connect(&mut self, ta: usize, a: (i64, i64), tb: usize, b: (i64, i64)) -> Result<()> {
        let fa = self.face_index(ta, a.0, a.1)?;
        let fb = self.face_index(tb, b.0, b.1)?;
        if fa == fb {
            return Err(Error::Precondition("cannot glue a square to itself".into()));
        }
        let wa = self.faces[fa].take().unwrap();
        let wb = self.faces[fb].take().unwrap();
        let ga = &mut self.tori[ta];
        let ia = ga.vertex(a.0, a.1);
        ga.faces[ia] = None;
        let gb = &mut self.tori[tb];
        let ib = gb.vertex(b.0, b.1);
        gb.faces[ib] = None;
        // the hole walks are glued inversely: wa[i] runs along wb[3 - i] reversed
        let mut sub: HashMap<Dart, Dart> = HashMap::new();
        for i in 0..4 {
            let e = wb[3 - i];
            sub.insert(e.partner(), wa[i]);
            sub.insert(e, wa[i].partner());
        }
        for w in self.faces.iter_mut().flatten() {
            for d in w.iter_mut() {
                if let Some(&r) = sub.get(d) {
                    *d = r;
                }
            }
        }
        for t in &mut self.tori {
            for d in t.darts.iter_mut() {
                if let Some(&r) = sub.get(d) {
                    *d = r;
                }
            }
        }
        Ok(())
    }

    /// Leave square `(x, y)` of torus `t` unfilled.
    pub fn puncture(&mut self, t: usize, x: i64, y: i64) -> Result<()> {
        let f = self.face_index(t, x, y)?;
        self.boundary[f] = true;
        Ok(())
    }

    /// Darts of a walk of moves on torus `t` from `(x, y)`.
    pub fn walk(&self, t: usize, x: i64, y: i64, path: &str) -> Result<Vec<Dart>> {
        let g = &self.tori[t];
        let (mut x, mut y) = (x, y);
        let mut out = Vec::new();
        for m in moves(path) {
            let (d, nx, ny) = g.step(x, y, m)?;
            out.push(g.darts[d.0]);
            x = nx;
            y = ny;
        }
        Ok(out)
    }

    /// Boundary walk of square `(x, y)` of torus `t`.
    pub fn square(&self, t: usize, x: i64, y: i64) -> Vec<Dart> {
        let g = &self.tori[t];
        g.square(x, y).iter().map(|d| g.darts[d.0]).collect()
    }

    pub fn build(&self) -> Result<Assembled> {
        let faces: Vec<(&Vec<Dart>, bool)> = self
            .faces
            .iter()
            .zip(&self.boundary)
            .filter_map(|(f, &b)| f.as_ref().map(|w| (w, b)))
            .collect();
        let mut edge_map: HashMap<usize, usize> = HashMap::new();
        for (w, _) in &faces {
            for d in w.iter() {
                let n = edge_map.len();
                edge_map.entry(d.edge()).or_insert(n);
            }
        }
        let map = |d: Dart| Dart::new(edge_map[&d.edge()], d.is_reversed());
        let walks: Vec<Vec<Dart>> = faces.iter().map(|(w, _)| w.iter().map(|&d| map(d)).collect()).collect();
        let flags: Vec<bool> = faces.iter().map(|(_, b)| *b).collect();
        let surface = Surface::from_faces(2 * edge_map.len(), walks, flags)?;
        let remap = edge_map
            .keys()
            .flat_map(|&e| [Dart(2 * e), Dart(2 * e + 1)])
            .map(|d| (d, map(d)))
            .collect();
        Ok(Assembled { surface, remap })
    }
}

/// A named example.
#[derive(Clone, Debug)]
pub struct Example {
    pub name: &'static str,
    pub description: &'static str,
    pub triple: CurveArcTriple,
}

impl Example {
    pub fn spec(&self) -> InputSpec {
        let t = &self.triple;
        InputSpec::describe(
            Some(self.name.to_string()),
            &t.surface,
            Some((&t.alpha, &t.beta, &t.tau)),
        )
    }
}

/// Two 4x4 tori joined at square (2, 2) of each: genus 2.
fn genus_two(w: usize) -> Result<Patchwork> {
    let mut p = Patchwork::new();
    let a = p.torus(w, w);
    let b = p.torus(4, 4);
    p.connect(a, (w as i64 - 2, w as i64 - 2), b, (2, 2))?;
    Ok(p)
}

/// Three tori in a chain; the middle one carries both holes.
fn genus_three() -> Result<Patchwork> {
    let mut p = Patchwork::new();
    let a = p.torus(4, 4);
    let b = p.torus(4, 4);
    let c = p.torus(4, 4);
    p.connect(a, (2, 2), b, (1, 1))?;
    p.connect(b, (1, 3), c, (2, 2))?;
    Ok(p)
}

/// The torus curve of slope `(1, q)` on a `w x h` grid, started at `(0, 1)`:
/// in every column it climbs `q h / w` rows, then steps right.
fn staircase(w: usize, h: usize, q: usize) -> String {
    assert_eq!((q * h) % w, 0, "columns must share the climb evenly");
    let climb = "U".repeat(q * h / w);
    format!("{climb}R").repeat(w)
}

pub fn example(name: &str) -> Result<Example> {
    examples()?
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Precondition(format!("no example named {name}")))
}

/// The bundled curve pairs on closed surfaces.
pub fn examples() -> Result<Vec<Example>> {
    let mut out = Vec::new();

    let p = genus_two(4)?;
    let s = p.build()?;
    out.push(Example {
        name: "g2-n0-diff",
        description: "disjoint curves on different handles",
        triple: s.triple(&p.walk(0, 0, 0, "RRRR")?, &p.walk(1, 0, 0, "RRRR")?)?,
    });
    out.push(Example {
        name: "g2-n1",
        description: "the two curves of one handle",
        triple: s.triple(&p.walk(0, 0, 0, "RRRR")?, &p.walk(0, 1, 1, "UUUU")?)?,
    });

    let p = genus_two(6)?;
    let s = p.build()?;
    out.push(Example {
        name: "g2-n2",
        description: "slopes (1, 0) and (1, 2) on one handle",
        triple: s.triple(&p.walk(0, 0, 0, "RRRRRR")?, &p.walk(0, 0, 1, &staircase(6, 6, 2))?)?,
    });
    out.push(Example {
        name: "g2-n4",
        description: "slopes (1, 0) and (1, 4) on one handle",
        triple: s.triple(&p.walk(0, 0, 0, "RRRRRR")?, &p.walk(0, 0, 1, &staircase(6, 6, 4))?)?,
    });

    let p = genus_three()?;
    let s = p.build()?;
    out.push(Example {
        name: "g3-n0-bp",
        description: "disjoint homologous curves cobounding a genus-one piece",
        triple: s.triple(&p.walk(1, 0, 0, "RRRR")?, &p.walk(1, 0, 2, "RRRR")?)?,
    });
    out.push(Example {
        name: "g3-n0-sep",
        description: "two disjoint separating curves",
        triple: s.triple(&p.square(1, 1, 1), &p.square(1, 1, 3))?,
    });

    // alpha dips across beta around one handle; the strip between the two
    // rows holds another, so both arcs are bad
    let mut p = Patchwork::new();
    let a = p.torus(6, 6);
    let b = p.torus(4, 4);
    let c = p.torus(4, 4);
    p.connect(a, (0, 1), b, (2, 2))?;
    p.connect(a, (3, 4), c, (2, 2))?;
    let s = p.build()?;
    out.push(Example {
        name: "g3-n2-bad",
        description: "homologous curves whose two arcs both close up into separating curves",
        triple: s.triple(&p.walk(a, 0, 3, "RRR DDDDD R UUUUU RR")?, &p.walk(a, 0, 0, "RRRRRR")?)?,
    });

    let mut p = Patchwork::new();
    let a = p.torus(12, 6);
    let b = p.torus(4, 4);
    let c = p.torus(4, 4);
    p.connect(a, (4, 4), b, (2, 2))?;
    p.connect(a, (9, 4), c, (2, 2))?;
    let s = p.build()?;
    out.push(Example {
        name: "g3-n6",
        description: "slopes (1, 0) and (1, 6) on one handle of genus three",
        triple: s.triple(
            &p.walk(a, 0, 0, &"R".repeat(12))?,
            &p.walk(a, 0, 1, &staircase(12, 6, 6))?,
        )?,
    });
    Ok(out)
}

/// The punctured torus with curves of slopes `(1, 0)` and `(1, 2)`.
pub fn punctured_torus() -> Result<Example> {
    let mut p = Patchwork::new();
    let t = p.torus(8, 8);
    // no corner of this square lies on either curve
    p.puncture(t, 1, 1)?;
    let s = p.build()?;
    Ok(Example {
        name: "punctured-torus",
        description: "slopes (1, 0) and (1, 2) on a torus with one hole",
        triple: s.triple(
            &p.walk(t, 0, 0, &"R".repeat(8))?,
            &p.walk(t, 0, 1, &staircase(8, 8, 2))?,
        )?,
    })
}

/// A `w x h` rectangle of squares in the plane; the outer face is a hole.
#[derive(Clone, Copy, Debug)]
struct PlanarGrid {
    w: usize,
    h: usize,
}

impl PlanarGrid {
    fn vertex(&self, x: usize, y: usize) -> usize {
        y * (self.w + 1) + x
    }

    fn horizontal(&self, x: usize, y: usize) -> usize {
        2 * self.vertex(x, y)
    }

    fn vertical(&self, x: usize, y: usize) -> usize {
        2 * self.vertex(x, y) + 1
    }

    fn dart(&self, x: usize, y: usize, m: char) -> Result<(Dart, usize, usize)> {
        let bad = || Error::InvalidWalk(format!("move {m:?} leaves the grid at ({x}, {y})"));
        Ok(match m {
            'R' if x < self.w => (Dart::new(self.horizontal(x, y), false), x + 1, y),
            'L' if x > 0 => (Dart::new(self.horizontal(x - 1, y), true), x - 1, y),
            'U' if y < self.h => (Dart::new(self.vertical(x, y), false), x, y + 1),
            'D' if y > 0 => (Dart::new(self.vertical(x, y - 1), true), x, y - 1),
            'R' | 'L' | 'U' | 'D' => return Err(bad()),
            other => return Err(Error::Parse(format!("unknown move {other:?}"))),
        })
    }

    fn walk(&self, x: usize, y: usize, path: &str) -> Result<Vec<Dart>> {
        let (mut x, mut y) = (x, y);
        let mut out = Vec::new();
        for m in moves(path) {
            let (d, nx, ny) = self.dart(x, y, m)?;
            out.push(d);
            x = nx;
            y = ny;
        }
        Ok(out)
    }

    /// Surface with the listed squares and the outer face left unfilled.
    /// Unused dart slots (right and top ends) are compacted away.
    fn build(&self, holes: &[(usize, usize)]) -> Result<(Surface, HashMap<Dart, Dart>)> {
        let (w, h) = (self.w, self.h);
        let mut faces = Vec::new();
        let mut flags = Vec::new();
        for y in 0..h {
            for x in 0..w {
                faces.push(vec![
                    Dart::new(self.horizontal(x, y), false),
                    Dart::new(self.vertical(x + 1, y), false),
                    Dart::new(self.horizontal(x, y + 1), true),
                    Dart::new(self.vertical(x, y), true),
                ]);
                flags.push(holes.contains(&(x, y)));
            }
        }
        let mut outer = Vec::new();
        outer.extend((0..w).rev().map(|x| Dart::new(self.horizontal(x, 0), true)));
        outer.extend((0..h).map(|y| Dart::new(self.vertical(0, y), false)));
        outer.extend((0..w).map(|x| Dart::new(self.horizontal(x, h), false)));
        outer.extend((0..h).rev().map(|y| Dart::new(self.vertical(w, y), true)));
        faces.push(outer);
        flags.push(true);
        let mut edge_map: HashMap<usize, usize> = HashMap::new();
        for f in &faces {
            for d in f {
                let n = edge_map.len();
                edge_map.entry(d.edge()).or_insert(n);
            }
        }
        let map = |d: Dart| Dart::new(edge_map[&d.edge()], d.is_reversed());
        let walks = faces.iter().map(|f| f.iter().map(|&d| map(d)).collect()).collect();
        let s = Surface::from_faces(2 * edge_map.len(), walks, flags)?;
        let remap = edge_map
            .keys()
            .flat_map(|&e| [Dart(2 * e), Dart(2 * e + 1)])
            .map(|d| (d, map(d)))
            .collect();
        Ok((s, remap))
    }
}

/// A sphere with three holes; the curves run around two of the holes.
pub fn three_holed_sphere() -> Result<Example> {
    let g = PlanarGrid { w: 9, h: 7 };
    let (surface, remap) = g.build(&[(1, 3), (6, 3)])?;
    let a = Assembled { surface, remap };
    Ok(Example {
        name: "three-holed-sphere",
        description: "curves around two of the three holes",
        triple: a.triple(&g.walk(0, 2, "RRRUUULLLDDD")?, &g.walk(5, 2, "RRRUUULLLDDD")?)?,
    })
}

/// Options for random curve pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomPairOptions {
    pub genus: usize,
    /// Side of each grid torus.
    pub grid: usize,
    /// Accepted crossing counts after bigon removal.
    pub min_crossings: usize,
    pub max_crossings: usize,
    /// Only accept pairs whose classes agree.
    pub same_class: bool,
    pub attempts: usize,
}

impl Default for RandomPairOptions {
    fn default() -> Self {
        RandomPairOptions {
            genus: 2,
            grid: 3,
            min_crossings: 0,
            max_crossings: 6,
            same_class: false,
            attempts: 200,
        }
    }
}

/// Chain of `genus` grid tori.
pub fn chain_surface(genus: usize, grid: usize) -> Result<Surface> {
    if genus == 0 || grid < 3 {
        return Err(Error::Precondition("need genus >= 1 and grid side >= 3".into()));
    }
    let mut p = Patchwork::new();
    let tori: Vec<usize> = (0..genus).map(|_| p.torus(grid, grid)).collect();
    for i in 1..genus {
        p.connect(tori[i - 1], (1, 1), tori[i], (0, 0))?;
    }
    Ok(p.build()?.surface)
}

/// The fundamental cycle of a random non-tree edge of a random spanning
/// forest of the edges allowed by `usable`.
fn random_cycle(s: &Surface, usable: &[bool], rng: &mut ChaCha8Rng) -> Option<Vec<Dart>> {
    let n = s.num_vertices();
    let mut edges: Vec<usize> = (0..s.num_edges()).filter(|&e| usable[e]).collect();
    edges.shuffle(rng);
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let mut tree = Vec::new();
    let mut extra = Vec::new();
    for e in edges {
        let d = Dart(2 * e);
        let (a, b) = (find(&mut uf, s.tail(d)), find(&mut uf, s.head(d)));
        if a != b {
            uf[a] = b;
            tree.push(e);
        } else {
            extra.push(e);
        }
    }
    extra.retain(|&e| s.tail(Dart(2 * e)) != s.head(Dart(2 * e)));
    let e = *extra.choose(rng)?;
    // path in the forest from head(e) back to tail(e)
    let mut adj: Vec<Vec<Dart>> = vec![Vec::new(); n];
    for &t in &tree {
        adj[s.tail(Dart(2 * t))].push(Dart(2 * t));
        adj[s.tail(Dart(2 * t + 1))].push(Dart(2 * t + 1));
    }
    let (from, to) = (s.head(Dart(2 * e)), s.tail(Dart(2 * e)));
    let mut parent: Vec<Option<Dart>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for &d in &adj[v] {
            let w = s.head(d);
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(d);
                queue.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut v = to;
    while let Some(d) = parent[v] {
        path.push(d);
        v = s.tail(d);
    }
    path.reverse();
    let mut cycle = vec![Dart(2 * e)];
    cycle.extend(path);
    Some(cycle)
}

/// Reject pairs a tower cannot start from: curves bounding discs and
/// disjoint curves cobounding an annulus.
pub fn admissible(t: &CurveArcTriple) -> Result<()> {
    let s = &t.surface;
    let h = H1Space::new(s);
    for (name, c) in [("alpha", &t.alpha), ("beta", &t.beta)] {
        if h.class_of_darts(c.darts()).is_zero() {
            let sides = cut_along(s, c)?;
            if sides.left.surface.euler_characteristic() == 1 || sides.right.surface.euler_characteristic() == 1 {
                return Err(Error::Precondition(format!("{name} bounds a disc")));
            }
        }
    }
    if t.n() == 0 {
        let mut mask = vec![false; s.num_edges()];
        for d in t.alpha.darts().iter().chain(t.beta.darts()) {
            mask[d.edge()] = true;
        }
        for piece in cut_along_edges(s, &mask)? {
            if piece.surface.euler_characteristic() >= 0 {
                return Err(Error::Precondition("the curves cobound an annulus or a disc".into()));
            }
        }
    }
    Ok(())
}

/// A random admissible pair in minimal position on a chain of grid tori.
pub fn random_pair(opts: &RandomPairOptions, seed: u64) -> Result<CurveArcTriple> {
    let s = chain_surface(opts.genus, opts.grid)?;
    let h = H1Space::new(&s);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..opts.attempts {
        let all = vec![true; s.num_edges()];
        let Some(a) = random_cycle(&s, &all, &mut rng) else {
            continue;
        };
        let mut rest = all.clone();
        for d in &a {
            rest[d.edge()] = false;
        }
        let Some(b) = random_cycle(&s, &rest, &mut rng) else {
            continue;
        };
        // rotate beta to a random start
        let j = rng.gen_range(0..b.len());
        let b: Vec<Dart> = (0..b.len()).map(|i| b[(i + j) % b.len()]).collect();
        let (Ok(alpha), Ok(beta)) = (EdgeWalk::closed(&s, a), EdgeWalk::closed(&s, b)) else {
            continue;
        };
        if crossings(&s, &alpha, &beta).is_err() {
            continue;
        }
        if opts.same_class && h.class_of_darts(alpha.darts()) != h.class_of_darts(beta.darts()) {
            continue;
        }
        let tau = EdgeWalk::path(&s, alpha.start(), s.shortest_path(alpha.start(), beta.start()))?;
        let Ok(red) = reduce_to_minimal(&s, &alpha, &beta, &tau) else {
            continue;
        };
        if !(opts.min_crossings..=opts.max_crossings).contains(&red.crossings.len()) {
            continue;
        }
        let Ok(t) = CurveArcTriple::new(red.surface, red.alpha, red.beta, red.tau) else {
            continue;
        };
        if admissible(&t).is_ok() {
            return Ok(t);
        }
    }
    Err(Error::SearchExhausted(format!(
        "no admissible pair in {} attempts",
        opts.attempts
    )))
}

/// Option sets cycled through by [`random_pairs`].
pub fn random_pair_mix() -> Vec<RandomPairOptions> {
    let base = RandomPairOptions::default();
    vec![
        base,
        RandomPairOptions {
            grid: 4,
            min_crossings: 1,
            same_class: true,
            attempts: 2000,
            ..base
        },
        RandomPairOptions {
            genus: 3,
            grid: 4,
            same_class: true,
            attempts: 2000,
            ..base
        },
        RandomPairOptions {
            genus: 3,
            grid: 4,
            min_crossings: 2,
            same_class: true,
            attempts: 2000,
            ..base
        },
    ]
}

/// A random pair together with the seed and option set that produced it.
#[derive(Clone, Debug)]
pub struct RandomCase {
    pub seed: u64,
    pub options: RandomPairOptions,
    pub triple: CurveArcTriple,
}

/// `count` random pairs cycling through [`random_pair_mix`]. Slot `i` scans
/// seeds `base + 1000 i + j` and keeps the first that succeeds.
pub fn random_pairs(count: usize, base: u64) -> Result<Vec<RandomCase>> {
    let mix = random_pair_mix();
    (0..count)
        .map(|i| {
            let options = mix[i % mix.len()];
            (0..50u64)
                .map(|j| base + 1000 * i as u64 + j)
                .find_map(|seed| {
                    random_pair(&options, seed)
                        .ok()
                        .map(|triple| RandomCase { seed, options, triple })
                })
                .ok_or_else(|| Error::SearchExhausted(format!("no random pair for slot {i}")))
        })
        .collect()
}
