//! Maximum flow with unit-capacity sink edges (Dinic, iterative search).

pub(super) struct Network {
    adj: Vec<Vec<u32>>,
    to: Vec<u32>,
    cap: Vec<u32>,
    level: Vec<u32>,
    next: Vec<u32>,
}

const UNSEEN: u32 = u32::MAX;

impl Network {
    pub(super) fn new(nodes: usize) -> Self {
        Network { adj: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new(), level: vec![UNSEEN; nodes], next: vec![0; nodes] }
    }

    pub(super) fn add_edge(&mut self, from: usize, to: usize, cap: u32) {
        let e = self.to.len() as u32;
        self.to.push(to as u32);
        self.cap.push(cap);
        self.to.push(from as u32);
        self.cap.push(0);
        self.adj[from].push(e);
        self.adj[to].push(e + 1);
    }

    fn levels(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(UNSEEN);
        self.level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s as u32]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u as usize] {
                let w = self.to[e as usize] as usize;
                if self.cap[e as usize] > 0 && self.level[w] == UNSEEN {
                    self.level[w] = self.level[u as usize] + 1;
                    queue.push_back(w as u32);
                }
            }
        }
        self.level[t] != UNSEEN
    }

    /// Pushes one unit along a shortest residual path, if one remains in
    /// the current level graph.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut path: Vec<u32> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                for &e in &path {
                    self.cap[e as usize] -= 1;
                    self.cap[(e ^ 1) as usize] += 1;
                }
                return true;
            }
            let mut advanced = false;
            while (self.next[u] as usize) < self.adj[u].len() {
                let e = self.adj[u][self.next[u] as usize];
                let w = self.to[e as usize] as usize;
                if self.cap[e as usize] > 0 && self.level[w] == self.level[u] + 1 {
                    path.push(e);
                    u = w;
                    advanced = true;
                    break;
                }
                self.next[u] += 1;
            }
            if advanced {
                continue;
            }
            self.level[u] = UNSEEN;
            match path.pop() {
                None => return false,
                Some(e) => {
                    u = self.to[(e ^ 1) as usize] as usize;
                    self.next[u] += 1;
                }
            }
        }
    }

    /// Flow value from `s` to `t`, stopping early once `target` is reached.
    pub(super) fn max_flow(&mut self, s: usize, t: usize, target: u64) -> u64 {
        let mut total = 0;
        while total < target && self.levels(s, t) {
            self.next.fill(0);
            while total < target && self.augment(s, t) {
                total += 1;
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bipartite_matching() {
        // s=0, t=1, left 2..4, right 5..7; left 2 and 3 both only reach 5.
        let mut n = Network::new(8);
        for l in 2..5 {
            n.add_edge(0, l, 1);
        }
        for r in 5..8 {
            n.add_edge(r, 1, 1);
        }
        n.add_edge(2, 5, 1);
        n.add_edge(3, 5, 1);
        n.add_edge(4, 6, 1);
        n.add_edge(4, 7, 1);
        assert_eq!(n.max_flow(0, 1, 10), 2);
    }

    #[test]
    fn source_capacity_shared() {
        let mut n = Network::new(5);
        n.add_edge(0, 2, 2);
        n.add_edge(2, 3, 1);
        n.add_edge(2, 4, 1);
        n.add_edge(3, 1, 1);
        n.add_edge(4, 1, 1);
        assert_eq!(n.max_flow(0, 1, 10), 2);
        let mut n = Network::new(5);
        n.add_edge(0, 2, 1);
        n.add_edge(2, 3, 1);
        n.add_edge(2, 4, 1);
        n.add_edge(3, 1, 1);
        n.add_edge(4, 1, 1);
        assert_eq!(n.max_flow(0, 1, 10), 1);
    }
}
