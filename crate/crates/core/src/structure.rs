//! The graph on voters: a line order, a rooted tree, or a grid.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structure {
    Line(LineOrder),
    Tree(RootedTree),
    Grid(GridShape),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Line(_) => "line",
            Structure::Tree(_) => "tree",
            Structure::Grid(_) => "grid",
        }
    }

    pub fn num_voters(&self) -> usize {
        match self {
            Structure::Line(order) => order.len(),
            Structure::Tree(tree) => tree.len(),
            Structure::Grid(grid) => grid.len(),
        }
    }

    /// The voter whose ranking becomes the identity after normalization:
    /// first voter on the line, the tree root, or grid cell (1,1).
    pub fn reference_voter(&self) -> usize {
        match self {
            Structure::Line(order) => order.as_slice()[0],
            Structure::Tree(tree) => tree.root(),
            Structure::Grid(_) => 0,
        }
    }
}

/// A permutation of voters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineOrder(Vec<usize>);

impl LineOrder {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &v in &order {
            if v >= order.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidStructure(
                    "line order is not a permutation of the voters".into(),
                ));
            }
        }
        if order.is_empty() {
            return Err(Error::InvalidStructure("line order is empty".into()));
        }
        Ok(Self(order))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A rooted tree on voters `0..n` with an explicit child order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    root: usize,
    children: Vec<Vec<usize>>,
}

impl RootedTree {
    /// Builds a tree from parent links; children are ordered by index.
    pub fn from_parents(parent: Vec<Option<usize>>, root: usize) -> Result<Self> {
        let mut children = vec![Vec::new(); parent.len()];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= parent.len() {
                    return Err(Error::NotATree {
                        root,
                        reason: format!("voter {} has out-of-range parent", v + 1),
                    });
                }
                children[p].push(v);
            }
        }
        Self::new(parent, root, children)
    }

    pub fn new(parent: Vec<Option<usize>>, root: usize, children: Vec<Vec<usize>>) -> Result<Self> {
        let n = parent.len();
        let not_a_tree = |reason: String| Error::NotATree { root, reason };
        if n == 0 || root >= n {
            return Err(not_a_tree("root out of range".into()));
        }
        if children.len() != n {
            return Err(not_a_tree("child_order has the wrong length".into()));
        }
        for (v, p) in parent.iter().enumerate() {
            match (v == root, p) {
                (true, Some(_)) => return Err(not_a_tree("root has a parent".into())),
                (false, None) => {
                    return Err(not_a_tree(format!("voter {} has no parent", v + 1)))
                }
                (false, Some(p)) if *p >= n || *p == v => {
                    return Err(not_a_tree(format!("voter {} has an invalid parent", v + 1)))
                }
                _ => {}
            }
        }
        let mut listed = vec![false; n];
        for (v, kids) in children.iter().enumerate() {
            for &u in kids {
                if u >= n || parent[u] != Some(v) || std::mem::replace(&mut listed[u], true) {
                    return Err(not_a_tree(format!(
                        "child_order of voter {} does not match the parent links",
                        v + 1
                    )));
                }
            }
        }
        if (0..n).any(|v| v != root && !listed[v]) {
            return Err(not_a_tree("child_order omits a child".into()));
        }
        let tree = Self {
            parent,
            root,
            children,
        };
        if tree.pre_order().len() != n {
            return Err(not_a_tree("parent links contain a cycle".into()));
        }
        Ok(tree)
    }

    /// A path `order[0] - order[1] - ...` rooted at `order[0]`.
    pub fn path(order: &[usize]) -> Result<Self> {
        let mut parent = vec![None; order.len()];
        for w in order.windows(2) {
            parent[w[1]] = Some(w[0]);
        }
        Self::from_parents(parent, *order.first().ok_or(Error::InvalidN(0))?)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Vertices reachable from the root, parents before children.
    pub fn pre_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        let mut seen = vec![false; self.len()];
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            order.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        order
    }

    /// Children before parents.
    pub fn post_order(&self) -> Vec<usize> {
        let mut order = self.pre_order();
        order.reverse();
        order
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.len()];
        for v in self.pre_order() {
            if let Some(p) = self.parent[v] {
                depth[v] = depth[p] + 1;
            }
        }
        depth
    }

    /// The vertices on the simple path from `a` to `b`, inclusive.
    pub fn path_between(&self, a: usize, b: usize, depth: &[usize]) -> Vec<usize> {
        let (mut x, mut y) = (a, b);
        let mut head = vec![];
        let mut tail = vec![];
        while depth[x] > depth[y] {
            head.push(x);
            x = self.parent[x].unwrap();
        }
        while depth[y] > depth[x] {
            tail.push(y);
            y = self.parent[y].unwrap();
        }
        while x != y {
            head.push(x);
            tail.push(y);
            x = self.parent[x].unwrap();
            y = self.parent[y].unwrap();
        }
        head.push(x);
        head.extend(tail.into_iter().rev());
        head
    }
}

/// An `n1 x n2` grid; cell `(i, j)` (0-based) is voter `i * n2 + j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridShape {
    pub n1: usize,
    pub n2: usize,
}

impl GridShape {
    pub fn new(n1: usize, n2: usize) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::InvalidStructure("grid dimensions must be positive".into()));
        }
        Ok(Self { n1, n2 })
    }

    pub fn len(&self) -> usize {
        self.n1 * self.n2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.n2 + j
    }

    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v / self.n2, v % self.n2)
    }
}
