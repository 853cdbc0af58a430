use std::collections::VecDeque;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::exec::Exec;

/// A typed incidence system with elements numbered `0..total`, type by type.
///
/// For every element and every type the incident elements of that type are
/// stored as a bitset over labels, so incidence tests and flag extension
/// are bitset operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceSystem {
    counts: Vec<usize>,
    offsets: Vec<usize>,
    adj: Vec<FixedBitSet>,
}

impl IncidenceSystem {
    fn empty(counts: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(counts.len() + 1);
        let mut acc = 0;
        for &c in &counts {
            offsets.push(acc);
            acc += c;
        }
        offsets.push(acc);
        let rank = counts.len();
        let adj = (0..acc * rank)
            .map(|k| FixedBitSet::with_capacity(counts[k % rank]))
            .collect();
        IncidenceSystem {
            counts,
            offsets,
            adj,
        }
    }

    /// Builds the system from an incidence predicate on `(type, label)` pairs.
    pub fn from_fn<F>(counts: Vec<usize>, incident: F) -> Self
    where
        F: Fn((usize, u32), (usize, u32)) -> bool,
    {
        let mut sys = Self::empty(counts);
        let rank = sys.rank();
        for t in 0..rank {
            for u in 0..rank {
                if t == u {
                    continue;
                }
                for a in 0..sys.counts[t] as u32 {
                    for b in 0..sys.counts[u] as u32 {
                        if incident((t, a), (u, b)) {
                            let id = sys.id(t, a) as usize;
                            sys.adj[id * rank + u].insert(b as usize);
                        }
                    }
                }
            }
        }
        sys
    }

    /// Builds the system from per-element neighbour lists:
    /// `neighbours[type][label][other_type]` lists incident labels.
    pub(crate) fn from_neighbour_sets(
        counts: Vec<usize>,
        sets: Vec<Vec<Vec<FixedBitSet>>>,
    ) -> Self {
        let mut sys = Self::empty(counts);
        let rank = sys.rank();
        for (t, per_type) in sets.into_iter().enumerate() {
            for (a, per_label) in per_type.into_iter().enumerate() {
                let id = sys.offsets[t] + a;
                for (u, set) in per_label.into_iter().enumerate() {
                    if u != t {
                        sys.adj[id * rank + u] = set;
                    }
                }
            }
        }
        sys
    }

    pub fn rank(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        *self.offsets.last().unwrap_or(&0)
    }

    pub fn id(&self, t: usize, label: u32) -> u32 {
        (self.offsets[t] + label as usize) as u32
    }

    pub fn type_of(&self, id: u32) -> usize {
        let id = id as usize;
        self.offsets[1..].partition_point(|&o| o <= id)
    }

    pub fn split(&self, id: u32) -> (usize, u32) {
        let t = self.type_of(id);
        (t, (id as usize - self.offsets[t]) as u32)
    }

    /// Incident labels of type `t` for element `id`.
    pub fn neighbours(&self, id: u32, t: usize) -> &FixedBitSet {
        &self.adj[id as usize * self.rank() + t]
    }

    pub fn incident(&self, a: u32, b: u32) -> bool {
        if a == b {
            return true;
        }
        let (tb, lb) = self.split(b);
        if self.type_of(a) == tb {
            return false;
        }
        self.neighbours(a, tb).contains(lb as usize)
    }

    /// Elements of type `t` incident to every element of `flag`.
    pub fn extensions(&self, flag: &[u32], t: usize) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.counts[t]);
        set.insert_range(..);
        for &f in flag {
            if self.type_of(f) == t {
                set.clear();
                set.insert(f as usize - self.offsets[t]);
                return set;
            }
            set.intersect_with(self.neighbours(f, t));
        }
        set
    }

    pub fn is_flag(&self, ids: &[u32]) -> bool {
        ids.iter().enumerate().all(|(k, &a)| {
            ids[k + 1..]
                .iter()
                .all(|&b| self.type_of(a) != self.type_of(b) && self.incident(a, b))
        })
    }

    /// All chambers, as label vectors indexed by type, in lexicographic order.
    pub fn chambers(&self, exec: Exec) -> Chambers {
        let rank = self.rank();
        if rank == 0 {
            return Chambers {
                rank,
                data: Vec::new(),
            };
        }
        let parts: Vec<Vec<u32>> = exec.map_range(self.counts[0], |l0| {
            let mut out = Vec::new();
            let mut current = vec![self.id(0, l0 as u32)];
            self.extend_chamber(&mut current, &mut out);
            out
        });
        Chambers {
            rank,
            data: parts.concat(),
        }
    }

    fn extend_chamber(&self, current: &mut Vec<u32>, out: &mut Vec<u32>) {
        let t = current.len();
        if t == self.rank() {
            out.extend(
                current
                    .iter()
                    .enumerate()
                    .map(|(k, &id)| id - self.offsets[k] as u32),
            );
            return;
        }
        let cand = self.extensions(current, t);
        for l in cand.ones() {
            current.push(self.id(t, l as u32));
            self.extend_chamber(current, out);
            current.pop();
        }
    }

    /// All flags of type `types` (given in increasing order), as label
    /// vectors aligned with `types`, in lexicographic order.
    pub fn flags_of_type(&self, types: &[usize], exec: Exec) -> Vec<Vec<u32>> {
        let Some((&first, _)) = types.split_first() else {
            return vec![Vec::new()];
        };
        let parts: Vec<Vec<Vec<u32>>> = exec.map_range(self.counts[first], |l0| {
            let mut out = Vec::new();
            let mut current = vec![self.id(first, l0 as u32)];
            self.extend_flag(types, &mut current, &mut out);
            out
        });
        parts.concat()
    }

    fn extend_flag(&self, types: &[usize], current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let k = current.len();
        if k == types.len() {
            out.push(
                current
                    .iter()
                    .zip(types)
                    .map(|(&id, &t)| id - self.offsets[t] as u32)
                    .collect(),
            );
            return;
        }
        let t = types[k];
        for l in self.extensions(current, t).ones() {
            current.push(self.id(t, l as u32));
            self.extend_flag(types, current, out);
            current.pop();
        }
    }

    /// Whether the incidence graph of the residue of `flag` is connected.
    /// An empty residue counts as connected.
    pub fn residue_is_connected(&self, flag: &[u32]) -> bool {
        let used: Vec<usize> = flag.iter().map(|&f| self.type_of(f)).collect();
        let sets: Vec<Option<FixedBitSet>> = (0..self.rank())
            .map(|t| (!used.contains(&t)).then(|| self.extensions(flag, t)))
            .collect();
        let total: usize = sets.iter().flatten().map(|s| s.count_ones(..)).sum();
        let Some((t0, l0)) = sets
            .iter()
            .enumerate()
            .find_map(|(t, s)| s.as_ref().and_then(|s| s.ones().next()).map(|l| (t, l)))
        else {
            return true;
        };
        let mut visited: Vec<FixedBitSet> = self
            .counts
            .iter()
            .map(|&c| FixedBitSet::with_capacity(c))
            .collect();
        visited[t0].insert(l0);
        let mut stack = vec![(t0, l0)];
        let mut seen = 1;
        while let Some((t, l)) = stack.pop() {
            let id = self.id(t, l as u32);
            for (u, set) in sets.iter().enumerate() {
                let Some(set) = set else { continue };
                if u == t {
                    continue;
                }
                for m in self.neighbours(id, u).intersection(set) {
                    if !visited[u].put(m) {
                        seen += 1;
                        stack.push((u, m));
                    }
                }
            }
        }
        seen == total
    }

    /// Induced subsystem on the elements incident to every element of `flag`
    /// and of a type not met by `flag`.
    pub fn residue(&self, flag: &[u32]) -> SubSystem {
        let used: Vec<usize> = flag.iter().map(|&f| self.type_of(f)).collect();
        let types: Vec<usize> = (0..self.rank()).filter(|t| !used.contains(t)).collect();
        let labels: Vec<Vec<u32>> = types
            .iter()
            .map(|&t| self.extensions(flag, t).ones().map(|l| l as u32).collect())
            .collect();
        self.restrict(types, labels)
    }

    /// The subsystem on the elements whose type lies in `types`.
    pub fn truncation(&self, types: &[usize]) -> SubSystem {
        let labels = types
            .iter()
            .map(|&t| (0..self.counts[t] as u32).collect())
            .collect();
        self.restrict(types.to_vec(), labels)
    }

    fn restrict(&self, types: Vec<usize>, labels: Vec<Vec<u32>>) -> SubSystem {
        let counts: Vec<usize> = labels.iter().map(Vec::len).collect();
        let sets = types
            .iter()
            .enumerate()
            .map(|(i, &t)| {
                labels[i]
                    .iter()
                    .map(|&a| {
                        let id = self.id(t, a);
                        types
                            .iter()
                            .enumerate()
                            .map(|(j, &u)| {
                                let mut set = FixedBitSet::with_capacity(counts[j]);
                                if j != i {
                                    let nb = self.neighbours(id, u);
                                    for (k, &b) in labels[j].iter().enumerate() {
                                        if nb.contains(b as usize) {
                                            set.insert(k);
                                        }
                                    }
                                }
                                set
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        SubSystem {
            system: IncidenceSystem::from_neighbour_sets(counts, sets),
            types,
            labels,
        }
    }

    fn graph_neighbours(&self, id: u32) -> impl Iterator<Item = u32> + '_ {
        let t0 = self.type_of(id);
        (0..self.rank())
            .filter(move |&t| t != t0)
            .flat_map(move |t| {
                self.neighbours(id, t)
                    .ones()
                    .map(move |l| self.id(t, l as u32))
            })
    }

    /// Connected components of the incidence graph, as a component index per element.
    pub fn components(&self) -> (usize, Vec<u32>) {
        let n = self.total();
        let mut comp = vec![u32::MAX; n];
        let mut count = 0u32;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if comp[s] != u32::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s as u32);
            while let Some(v) = queue.pop_front() {
                for w in self.graph_neighbours(v) {
                    if comp[w as usize] == u32::MAX {
                        comp[w as usize] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (count as usize, comp)
    }

    pub fn is_connected(&self) -> bool {
        self.components().0 <= 1
    }

    /// Length of a shortest cycle of the incidence graph, if any.
    pub fn girth(&self) -> Option<usize> {
        let n = self.total();
        let mut best: Option<usize> = None;
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![u32::MAX; n];
        for root in 0..n as u32 {
            dist.iter_mut().for_each(|d| *d = u32::MAX);
            dist[root as usize] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[v as usize] as usize + 1 >= b {
                        break;
                    }
                }
                for w in self.graph_neighbours(v) {
                    if dist[w as usize] == u32::MAX {
                        dist[w as usize] = dist[v as usize] + 1;
                        parent[w as usize] = v;
                        queue.push_back(w);
                    } else if parent[v as usize] != w {
                        let len = (dist[v as usize] + dist[w as usize] + 1) as usize;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Every two elements of distinct types are incident.
    pub fn is_generalized_digon(&self) -> bool {
        (0..self.total() as u32).all(|id| {
            let t0 = self.type_of(id);
            (0..self.rank())
                .filter(|&t| t != t0)
                .all(|t| self.neighbours(id, t).count_ones(..) == self.counts[t])
        })
    }

    /// Incidence graph in DOT, one colour per type.
    pub fn to_dot(&self, name: &str) -> String {
        const COLOURS: [&str; 8] = [
            "red",
            "blue",
            "darkgreen",
            "orange",
            "purple",
            "brown",
            "cyan",
            "gray",
        ];
        let mut out = String::new();
        let _ = writeln!(out, "graph {name} {{");
        for id in 0..self.total() as u32 {
            let (t, l) = self.split(id);
            let _ = writeln!(
                out,
                "  e{id} [label=\"{t}:{l}\", color={}];",
                COLOURS[t % COLOURS.len()]
            );
        }
        for a in 0..self.total() as u32 {
            for b in self.graph_neighbours(a) {
                if a < b {
                    let _ = writeln!(out, "  e{a} -- e{b};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// A residue or truncation together with the original type and label of
/// each of its elements.
#[derive(Debug, Clone)]
pub struct SubSystem {
    pub system: IncidenceSystem,
    /// Original type of each residue type.
    pub types: Vec<usize>,
    /// `labels[i][k]` is the original label of element `k` of residue type `i`.
    pub labels: Vec<Vec<u32>>,
}

/// Chambers stored row by row; rows are label vectors indexed by type and
/// are kept in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chambers {
    rank: usize,
    data: Vec<u32>,
}

impl Chambers {
    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.rank).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize) -> &[u32] {
        &self.data[i * self.rank..(i + 1) * self.rank]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.data.chunks(self.rank.max(1))
    }

    pub fn index_of(&self, labels: &[u32]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(labels) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// For every chamber and type, the chambers that differ exactly in that
    /// type; entry `c * rank + t`.
    pub fn adjacency(&self, system: &IncidenceSystem, exec: Exec) -> Vec<Vec<u32>> {
        let rank = self.rank;
        exec.map_range(self.len() * rank, |k| {
            self.adjacent(system, k / rank, k % rank)
                .into_iter()
                .map(|d| d as u32)
                .collect()
        })
    }

    /// Indices of the chambers that differ from chamber `c` exactly in type `t`.
    pub fn adjacent(&self, system: &IncidenceSystem, c: usize, t: usize) -> Vec<usize> {
        let row = self.get(c).to_vec();
        let flag: Vec<u32> = (0..self.rank)
            .filter(|&k| k != t)
            .map(|k| system.id(k, row[k]))
            .collect();
        let mut key = row.clone();
        system
            .extensions(&flag, t)
            .ones()
            .filter(|&l| l as u32 != row[t])
            .filter_map(|l| {
                key[t] = l as u32;
                self.index_of(&key)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Vertices and edges of an n-gon.
    pub(crate) fn polygon(n: usize) -> IncidenceSystem {
        IncidenceSystem::from_fn(vec![n, n], |(t, a), (_, b)| {
            let (v, e) = if t == 0 { (a, b) } else { (b, a) };
            e == v || (e + 1) % n as u32 == v
        })
    }

    #[test]
    fn polygon_chambers_and_girth() {
        let p = polygon(5);
        let ch = p.chambers(Exec::Sequential);
        assert_eq!(ch.len(), 10);
        assert_eq!(p.girth(), Some(10));
        assert!(p.is_connected());
        assert!(!p.is_generalized_digon());
        for c in 0..ch.len() {
            assert_eq!(ch.adjacent(&p, c, 0).len(), 1);
            assert_eq!(ch.adjacent(&p, c, 1).len(), 1);
        }
    }

    #[test]
    fn parallel_chamber_enumeration_matches() {
        let p = polygon(9);
        assert_eq!(p.chambers(Exec::Sequential), p.chambers(Exec::Parallel));
    }

    #[test]
    fn digon_and_residues() {
        let d = IncidenceSystem::from_fn(vec![2, 3], |_, _| true);
        assert!(d.is_generalized_digon());
        assert_eq!(d.girth(), Some(4));
        let r = d.residue(&[d.id(0, 1)]);
        assert_eq!(r.types, vec![1]);
        assert_eq!(r.system.counts(), &[3]);
    }

    #[test]
    fn type_lookup() {
        let p = polygon(4);
        assert_eq!(p.split(0), (0, 0));
        assert_eq!(p.split(5), (1, 1));
        assert!(p.incident(0, 0));
        assert!(!p.incident(0, 1));
    }
}
