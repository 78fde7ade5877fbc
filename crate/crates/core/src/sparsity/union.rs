use alloc::collections::VecDeque;
use alloc::vec::Vec;

/// A partition of an independent set of a `k`-fold matroid union into `k`
/// parts, each independent in the underlying matroid. Elements are inserted
/// one at a time along shortest augmenting paths of the exchange graph.
#[derive(Clone, Debug)]
pub struct MatroidPartition {
    parts: Vec<Vec<usize>>,
    owner: Vec<Option<usize>>,
}

impl MatroidPartition {
    pub fn new(k: usize) -> Self {
        MatroidPartition { parts: alloc::vec![Vec::new(); k], owner: Vec::new() }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Vec<usize>> {
        self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, x: usize) -> bool {
        self.owner_of(x).is_some()
    }

    fn owner_of(&self, x: usize) -> Option<usize> {
        self.owner.get(x).copied().flatten()
    }

    fn set_owner(&mut self, x: usize, part: Option<usize>) {
        if x >= self.owner.len() {
            self.owner.resize(x + 1, None);
        }
        self.owner[x] = part;
    }

    /// Tries to add `x`, rearranging the parts if needed. `indep` decides
    /// independence of a set in the underlying matroid. Returns `false` and
    /// leaves the partition untouched when the union would become dependent.
    pub fn insert<F>(&mut self, x: usize, mut indep: F) -> bool
    where
        F: FnMut(&[usize]) -> bool,
    {
        if self.contains(x) {
            return true;
        }
        let mut parent: Vec<(usize, Option<(usize, usize)>)> = alloc::vec![(x, None)];
        let mut queue = VecDeque::from([x]);
        let mut scratch = Vec::new();
        while let Some(y) = queue.pop_front() {
            for i in 0..self.parts.len() {
                if self.owner_of(y) == Some(i) {
                    continue;
                }
                scratch.clear();
                scratch.extend_from_slice(&self.parts[i]);
                scratch.push(y);
                if indep(&scratch) {
                    self.augment(y, i, &parent);
                    return true;
                }
                for k in 0..self.parts[i].len() {
                    let z = self.parts[i][k];
                    if parent.iter().any(|&(w, _)| w == z) {
                        continue;
                    }
                    scratch.clear();
                    scratch.extend(self.parts[i].iter().copied().filter(|&w| w != z));
                    scratch.push(y);
                    if indep(&scratch) {
                        parent.push((z, Some((y, i))));
                        queue.push_back(z);
                    }
                }
            }
        }
        false
    }

    // `parent` entry `(z, (y, i))`: `y` enters part `i` where `z` leaves it.
    fn augment(&mut self, y: usize, i: usize, parent: &[(usize, Option<(usize, usize)>)]) {
        let (mut cur, mut target) = (y, i);
        loop {
            if let Some(old) = self.owner_of(cur) {
                self.parts[old].retain(|&w| w != cur);
            }
            self.parts[target].push(cur);
            self.set_owner(cur, Some(target));
            let link = parent.iter().find(|&&(w, _)| w == cur).and_then(|&(_, l)| l);
            match link {
                Some((w, j)) => {
                    cur = w;
                    target = j;
                }
                None => break,
            }
        }
    }
}
