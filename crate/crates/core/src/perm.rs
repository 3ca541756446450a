//! Permutation groups: deterministic Schreier-Sims.
//!
//! A permutation is stored as its image vector. Products apply left to right:
//! `(a * b)[x] = b[a[x]]`.

pub type Perm = Vec<u32>;

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

pub fn is_identity(p: &[u32]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

pub fn compose(a: &[u32], b: &[u32]) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn inverse(a: &[u32]) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

fn first_moved(p: &[u32]) -> Option<usize> {
    p.iter().enumerate().find(|&(i, &x)| i as u32 != x).map(|(i, _)| i)
}

#[derive(Debug, Clone)]
struct Level {
    point: usize,
    gens: Vec<Perm>,
    /// `trans[b]` maps the base point to `b`.
    trans: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(point: usize, n: usize) -> Self {
        let mut l = Level { point, gens: Vec::new(), trans: vec![None; n], orbit: Vec::new() };
        l.rebuild(n);
        l
    }

    fn rebuild(&mut self, n: usize) {
        self.trans = vec![None; n];
        self.trans[self.point] = Some(identity(n));
        self.orbit = vec![self.point];
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for s in &self.gens {
                let y = s[x] as usize;
                if self.trans[y].is_none() {
                    let u = compose(self.trans[x].as_ref().unwrap(), s);
                    self.trans[y] = Some(u);
                    self.orbit.push(y);
                }
            }
            i += 1;
        }
    }
}

/// Base and strong generating set of a permutation group.
#[derive(Debug, Clone)]
pub struct PermGroup {
    n: usize,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn new(n: usize, gens: &[Perm]) -> Self {
        let mut g = PermGroup { n, levels: Vec::new() };
        let gens: Vec<Perm> = gens.iter().filter(|p| !is_identity(p)).cloned().collect();
        if gens.is_empty() {
            return g;
        }
        for s in &gens {
            assert_eq!(s.len(), n, "permutation degree mismatch");
            if g.levels.iter().all(|l| s[l.point] as usize == l.point) {
                let b = first_moved(s).unwrap();
                g.levels.push(Level::new(b, n));
            }
        }
        for l in 0..g.levels.len() {
            let fixed: Vec<usize> = g.levels[..l].iter().map(|x| x.point).collect();
            g.levels[l].gens = gens.iter().filter(|s| fixed.iter().all(|&b| s[b] as usize == b)).cloned().collect();
            g.levels[l].rebuild(n);
        }
        g.schreier_sims();
        g
    }

    fn strip(&self, mut h: Perm, from: usize) -> (Perm, usize) {
        for l in from..self.levels.len() {
            let lev = &self.levels[l];
            let beta = h[lev.point] as usize;
            match &lev.trans[beta] {
                None => return (h, l),
                Some(u) => h = compose(&h, &inverse(u)),
            }
        }
        (h, self.levels.len())
    }

    fn schreier_sims(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            let mut restart = None;
            'outer: for &beta in &self.levels[lvl].orbit {
                let u_beta = self.levels[lvl].trans[beta].as_ref().unwrap();
                for s in &self.levels[lvl].gens {
                    let img = s[beta] as usize;
                    let u_img = self.levels[lvl].trans[img].as_ref().unwrap();
                    let h = compose(&compose(u_beta, s), &inverse(u_img));
                    let (y, j) = self.strip(h, lvl + 1);
                    if j < self.levels.len() || !is_identity(&y) {
                        restart = Some((y, j));
                        break 'outer;
                    }
                }
            }
            match restart {
                None => i -= 1,
                Some((y, mut j)) => {
                    if j == self.levels.len() {
                        let b = first_moved(&y).expect("nontrivial residue");
                        self.levels.push(Level::new(b, self.n));
                        j = self.levels.len() - 1;
                    }
                    for l in lvl + 1..=j {
                        self.levels[l].gens.push(y.clone());
                        self.levels[l].rebuild(self.n);
                    }
                    i = j as isize;
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn contains(&self, p: &[u32]) -> bool {
        let (y, j) = self.strip(p.to_vec(), 0);
        j == self.levels.len() && is_identity(&y)
    }

    pub fn strong_generators(&self) -> Vec<Perm> {
        let mut out: Vec<Perm> = Vec::new();
        for l in &self.levels {
            for g in &l.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }
}

/// Order of the group generated by `gens` acting on `n` points.
pub fn group_order(n: usize, gens: &[Perm]) -> u128 {
    PermGroup::new(n, gens).order()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize, pts: &[u32]) -> Perm {
        let mut p = identity(n);
        for w in 0..pts.len() {
            p[pts[w] as usize] = pts[(w + 1) % pts.len()];
        }
        p
    }

    #[test]
    fn symmetric_and_alternating() {
        for n in 2..8usize {
            let sym = [cycle(n, &[0, 1]), cycle(n, &(0..n as u32).collect::<Vec<_>>())];
            let fact: u128 = (1..=n as u128).product();
            assert_eq!(group_order(n, &sym), fact);
        }
        let a5 = [cycle(5, &[0, 1, 2]), cycle(5, &[0, 1, 2, 3, 4])];
        assert_eq!(group_order(5, &a5), 60);
    }

    #[test]
    fn membership() {
        let g = PermGroup::new(6, &[cycle(6, &[0, 1, 2]), cycle(6, &[3, 4, 5])]);
        assert_eq!(g.order(), 9);
        assert!(g.contains(&compose(&cycle(6, &[0, 1, 2]), &cycle(6, &[5, 4, 3]))));
        assert!(!g.contains(&cycle(6, &[0, 1])));
    }

    #[test]
    fn trivial_group() {
        assert_eq!(group_order(4, &[]), 1);
        assert_eq!(group_order(4, &[identity(4)]), 1);
    }
}
