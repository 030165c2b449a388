//! String diagrams of slice lists and their planar-map invariant.
//!
//! A sweep over the slices records, for every node, where each wire goes and
//! which face lies at each corner. The component attached to the boundary is
//! numbered by breadth-first search from the boundary ports, which fixes it
//! up to isotopy. Components with no boundary wires float inside a face;
//! they are encoded by the minimum over root choices and listed as a sorted
//! multiset per face.

use std::collections::{HashMap, VecDeque};

use super::{BaseMor, Gen, Name, ObjectWord};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tok {
    Frame(u32, u32),
    Obj(Name),
    Sep,
    Node(Name),
    Dom(u32),
    Cod(u32),
    In(u32, u32),
    Out(u32, u32),
    Face(u32),
    Open,
    Close,
}

/// Where a wire end attaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum End {
    /// Input boundary position.
    Dom(usize),
    /// Output boundary position.
    Cod(usize),
    /// Input port `(node, port)`.
    In(usize, usize),
    /// Output port `(node, port)`.
    Out(usize, usize),
}

struct Faces {
    parent: Vec<usize>,
}

impl Faces {
    fn fresh(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let n = self.parent[c];
            self.parent[c] = r;
            c = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb.max(ra)] = rb.min(ra);
        }
    }
}

/// The string diagram of a morphism. Node `k` is the generator of slice `k`
/// of the representative slice list.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub dom: ObjectWord,
    pub cod: ObjectWord,
    pub gens: Vec<Gen>,
    /// Source of each input port: `Dom` or `Out`.
    pub ins: Vec<Vec<End>>,
    /// Target of each output port: `Cod` or `In`.
    pub outs: Vec<Vec<End>>,
    /// Target of each input boundary wire: `Cod` or `In`.
    pub dom_peer: Vec<End>,
    /// Source of each output boundary wire: `Dom` or `Out`.
    pub cod_peer: Vec<End>,
    corners: Vec<Vec<usize>>,
    insert_face: Vec<usize>,
    dom_gaps: Vec<usize>,
    cod_gaps: Vec<usize>,
}

impl Diagram {
    pub fn build(f: &BaseMor) -> Diagram {
        let n = f.slices().len();
        let mut faces = Faces { parent: Vec::new() };
        let mut wires: Vec<End> = (0..f.dom().len()).map(End::Dom).collect();
        let mut gaps: Vec<usize> = (0..=f.dom().len()).map(|_| faces.fresh()).collect();
        let dom_gaps = gaps.clone();
        let mut d = Diagram {
            dom: f.dom().clone(),
            cod: f.cod().clone(),
            gens: Vec::with_capacity(n),
            ins: Vec::with_capacity(n),
            outs: Vec::with_capacity(n),
            dom_peer: vec![End::Cod(0); f.dom().len()],
            cod_peer: Vec::new(),
            corners: Vec::with_capacity(n),
            insert_face: Vec::with_capacity(n),
            dom_gaps,
            cod_gaps: Vec::new(),
        };
        for (k, s) in f.slices().iter().enumerate() {
            let l = s.left.len();
            let din = s.gen.dom.len();
            let cout = s.gen.cod.len();
            let mut ins = Vec::with_capacity(din);
            for j in 0..din {
                let src = wires[l + j];
                ins.push(src);
                d.connect(src, End::In(k, j));
            }
            d.gens.push(s.gen.clone());
            d.ins.push(ins);
            d.outs.push(vec![End::Cod(0); cout]);
            d.insert_face.push(gaps[l]);
            let left = gaps[l];
            let right = gaps[l + din];
            let mut corners = vec![left];
            let mut new_gaps = Vec::with_capacity(cout + 1);
            if cout == 0 {
                faces.union(left, right);
                new_gaps.push(left);
            } else {
                new_gaps.push(left);
                for _ in 1..cout {
                    let g = faces.fresh();
                    corners.push(g);
                    new_gaps.push(g);
                }
                new_gaps.push(right);
            }
            corners.push(right);
            for j in (1..din).rev() {
                corners.push(gaps[l + j]);
            }
            d.corners.push(corners);
            wires.splice(l..l + din, (0..cout).map(|p| End::Out(k, p)));
            gaps.splice(l..=l + din, new_gaps);
        }
        for (j, w) in wires.iter().enumerate() {
            d.connect(*w, End::Cod(j));
            d.cod_peer.push(*w);
        }
        d.cod_gaps = gaps;
        for c in d.corners.iter_mut() {
            for x in c.iter_mut() {
                *x = faces.find(*x);
            }
        }
        for x in d.insert_face.iter_mut().chain(d.dom_gaps.iter_mut()).chain(d.cod_gaps.iter_mut()) {
            *x = faces.find(*x);
        }
        d
    }

    fn connect(&mut self, src: End, dst: End) {
        match src {
            End::Dom(i) => self.dom_peer[i] = dst,
            End::Out(k, p) => self.outs[k][p] = dst,
            _ => unreachable!("wire sources are boundary inputs or node outputs"),
        }
    }

    pub fn node_count(&self) -> usize {
        self.gens.len()
    }

    /// Nodes reachable from node `k` along wires in the given direction.
    pub fn neighbours(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        let a = self.ins[k].iter().filter_map(|e| match e {
            End::Out(n, _) => Some(*n),
            _ => None,
        });
        let b = self.outs[k].iter().filter_map(|e| match e {
            End::In(n, _) => Some(*n),
            _ => None,
        });
        a.chain(b)
    }

    fn touches_frame(&self, k: usize) -> bool {
        self.ins[k].iter().any(|e| matches!(e, End::Dom(_))) || self.outs[k].iter().any(|e| matches!(e, End::Cod(_)))
    }

    /// Connected components of nodes; `None` marks the boundary component.
    fn components(&self) -> (Vec<usize>, usize) {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        // Component 0 is the boundary component.
        let mut queue: VecDeque<usize> = VecDeque::new();
        for (k, c) in comp.iter_mut().enumerate() {
            if self.touches_frame(k) && *c == usize::MAX {
                *c = 0;
                queue.push_back(k);
            }
        }
        while let Some(k) = queue.pop_front() {
            for m in self.neighbours(k).collect::<Vec<_>>() {
                if comp[m] == usize::MAX {
                    comp[m] = 0;
                    queue.push_back(m);
                }
            }
        }
        count += 1;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            queue.push_back(s);
            while let Some(k) = queue.pop_front() {
                for m in self.neighbours(k).collect::<Vec<_>>() {
                    if comp[m] == usize::MAX {
                        comp[m] = count;
                        queue.push_back(m);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }
}

struct Encoder<'a> {
    d: &'a Diagram,
    comp: Vec<usize>,
    members: Vec<Vec<usize>>,
    outer: Vec<usize>,
    children: HashMap<usize, Vec<usize>>,
    memo: HashMap<usize, Vec<Tok>>,
}

impl<'a> Encoder<'a> {
    fn new(d: &'a Diagram) -> Self {
        let (comp, count) = d.components();
        let mut members = vec![Vec::new(); count];
        for (k, c) in comp.iter().enumerate() {
            members[*c].push(k);
        }
        let mut outer = vec![usize::MAX; count];
        let mut children: HashMap<usize, Vec<usize>> = HashMap::new();
        for c in 1..count {
            let first = members[c][0];
            outer[c] = d.insert_face[first];
            children.entry(outer[c]).or_default().push(c);
        }
        Encoder { d, comp, members, outer, children, memo: HashMap::new() }
    }

    fn child_keys(&mut self, face: usize) -> Vec<Vec<Tok>> {
        let kids = self.children.get(&face).cloned().unwrap_or_default();
        let mut keys: Vec<Vec<Tok>> = kids.into_iter().map(|c| self.encode_floating(c)).collect();
        keys.sort();
        keys
    }

    fn peer(num: &HashMap<usize, u32>, e: &End) -> Tok {
        match e {
            End::Dom(i) => Tok::Dom(*i as u32),
            End::Cod(j) => Tok::Cod(*j as u32),
            End::In(k, p) => Tok::In(num[k], *p as u32),
            End::Out(k, p) => Tok::Out(num[k], *p as u32),
        }
    }

    fn number(&self, seeds: Vec<usize>) -> (Vec<usize>, HashMap<usize, u32>) {
        let mut order = Vec::new();
        let mut num = HashMap::new();
        let mut queue = VecDeque::new();
        for s in seeds {
            if let std::collections::hash_map::Entry::Vacant(e) = num.entry(s) {
                e.insert(order.len() as u32);
                order.push(s);
                queue.push_back(s);
            }
        }
        while let Some(k) = queue.pop_front() {
            let ports = self.d.ins[k].iter().chain(self.d.outs[k].iter());
            for e in ports {
                let m = match e {
                    End::In(m, _) | End::Out(m, _) => *m,
                    _ => continue,
                };
                if let std::collections::hash_map::Entry::Vacant(v) = num.entry(m) {
                    v.insert(order.len() as u32);
                    order.push(m);
                    queue.push_back(m);
                }
            }
        }
        (order, num)
    }

    fn emit_nodes(&self, order: &[usize], num: &HashMap<usize, u32>, labels: &mut Vec<usize>, out: &mut Vec<Tok>) {
        for &k in order {
            out.push(Tok::Node(self.d.gens[k].name.clone()));
            for e in self.d.ins[k].iter().chain(self.d.outs[k].iter()) {
                out.push(Self::peer(num, e));
            }
            for f in &self.d.corners[k] {
                out.push(Tok::Face(label_of(labels, *f)));
            }
        }
    }

    fn emit_faces(&mut self, labels: &[usize], skip_first: bool, out: &mut Vec<Tok>) {
        for (i, f) in labels.iter().enumerate() {
            if skip_first && i == 0 {
                continue;
            }
            let keys = self.child_keys(*f);
            if keys.is_empty() {
                continue;
            }
            out.push(Tok::Face(i as u32));
            out.push(Tok::Open);
            for k in keys {
                out.push(Tok::Open);
                out.extend(k);
                out.push(Tok::Close);
            }
            out.push(Tok::Close);
        }
    }

    fn encode_floating(&mut self, c: usize) -> Vec<Tok> {
        if let Some(k) = self.memo.get(&c) {
            return k.clone();
        }
        let mut best: Option<Vec<Tok>> = None;
        let members = self.members[c].clone();
        for &root in &members {
            let (order, num) = self.number(vec![root]);
            let mut labels = vec![self.outer[c]];
            let mut out = Vec::new();
            self.emit_nodes(&order, &num, &mut labels, &mut out);
            self.emit_faces(&labels, true, &mut out);
            if best.as_ref().is_none_or(|b| out < *b) {
                best = Some(out);
            }
        }
        let k = best.unwrap_or_default();
        self.memo.insert(c, k.clone());
        k
    }

    fn encode_frame(&mut self) -> Vec<Tok> {
        let d = self.d;
        let mut out = vec![Tok::Frame(d.dom.len() as u32, d.cod.len() as u32)];
        out.extend(d.dom.0.iter().map(|n| Tok::Obj(n.clone())));
        out.push(Tok::Sep);
        out.extend(d.cod.0.iter().map(|n| Tok::Obj(n.clone())));
        out.push(Tok::Sep);
        let mut seeds = Vec::new();
        for e in d.dom_peer.iter().chain(d.cod_peer.iter()) {
            if let End::In(k, _) | End::Out(k, _) = e {
                seeds.push(*k);
            }
        }
        let (order, num) = self.number(seeds);
        debug_assert!(order.iter().all(|k| self.comp[*k] == 0));
        for e in d.dom_peer.iter().chain(d.cod_peer.iter()) {
            out.push(Self::peer(&num, e));
        }
        let mut labels = Vec::new();
        for f in d.dom_gaps.iter().chain(d.cod_gaps.iter()) {
            out.push(Tok::Face(label_of(&mut labels, *f)));
        }
        out.push(Tok::Sep);
        self.emit_nodes(&order, &num, &mut labels, &mut out);
        self.emit_faces(&labels, false, &mut out);
        out
    }
}

fn label_of(labels: &mut Vec<usize>, face: usize) -> u32 {
    if let Some(i) = labels.iter().position(|f| *f == face) {
        return i as u32;
    }
    labels.push(face);
    (labels.len() - 1) as u32
}

pub(crate) fn key(f: &BaseMor) -> Vec<Tok> {
    let d = Diagram::build(f);
    Encoder::new(&d).encode_frame()
}
