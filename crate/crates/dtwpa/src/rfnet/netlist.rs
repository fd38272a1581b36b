//! Node-element netlist representation.

use serde::{Deserialize, Serialize};

use crate::{Error, Result, Scalar};

/// Reference to a circuit node: the distinguished ground or an indexed node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Node {
    Ground,
    N(usize),
}

impl Node {
    pub fn index(self) -> Option<usize> {
        match self {
            Node::Ground => None,
            Node::N(i) => Some(i),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementKind {
    Resistor,
    Inductor,
    Capacitor,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Element<T> {
    pub kind: ElementKind,
    pub value: T,
    pub a: Node,
    pub b: Node,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Port<T> {
    /// Port node; the port reference is ground.
    pub node: usize,
    pub z0: T,
}

/// Linear R/L/C netlist with ordered ports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Netlist<T> {
    pub num_nodes: usize,
    pub names: Vec<String>,
    pub elements: Vec<Element<T>>,
    pub ports: Vec<Port<T>>,
}

impl<T: Scalar> Netlist<T> {
    pub fn new() -> Self {
        Self {
            num_nodes: 0,
            names: Vec::new(),
            elements: Vec::new(),
            ports: Vec::new(),
        }
    }

    pub fn add_node(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.num_nodes += 1;
        self.num_nodes - 1
    }

    pub fn add_element(&mut self, kind: ElementKind, value: T, a: Node, b: Node) {
        self.elements.push(Element { kind, value, a, b });
    }

    pub fn add_port(&mut self, node: usize, z0: T) {
        self.ports.push(Port { node, z0 });
    }

    /// Largest |i - j| over non-ground element node pairs; the half-bandwidth
    /// of the nodal matrix under the netlist's own node ordering.
    pub fn bandwidth(&self) -> usize {
        self.elements
            .iter()
            .filter_map(|e| match (e.a.index(), e.b.index()) {
                (Some(i), Some(j)) => Some(i.abs_diff(j)),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Check element values, port impedances and ground connectivity.
    pub fn validate(&self) -> Result<()> {
        for e in &self.elements {
            if !(e.value > T::zero()) || !e.value.is_finite() {
                return Err(Error::InvalidNetlist(format!(
                    "element value {} must be positive and finite",
                    e.value
                )));
            }
            for n in [e.a, e.b] {
                if let Node::N(i) = n {
                    if i >= self.num_nodes {
                        return Err(Error::InvalidNetlist(format!("node {i} out of range")));
                    }
                }
            }
        }
        for p in &self.ports {
            if p.node >= self.num_nodes {
                return Err(Error::InvalidNetlist(format!("port node {} out of range", p.node)));
            }
            if !(p.z0 > T::zero()) {
                return Err(Error::InvalidNetlist("port impedance must be positive".into()));
            }
        }
        // Union-find over {ground} + nodes. Port terminations ground their
        // node; every node must then reach ground, or its admittance rows
        // form a floating island that is singular at every frequency.
        let mut parent: Vec<usize> = (0..self.num_nodes + 1).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.elements {
            let ia = e.a.index().map_or(0, |i| i + 1);
            let ib = e.b.index().map_or(0, |i| i + 1);
            let (ra, rb) = (find(&mut parent, ia), find(&mut parent, ib));
            parent[ra] = rb;
        }
        for p in &self.ports {
            let (ra, rb) = (find(&mut parent, 0), find(&mut parent, p.node + 1));
            parent[ra] = rb;
        }
        let ground_root = find(&mut parent, 0);
        for i in 0..self.num_nodes {
            if find(&mut parent, i + 1) != ground_root {
                return Err(Error::InvalidNetlist(format!(
                    "node {i} has no path to ground"
                )));
            }
        }
        Ok(())
    }

    /// Append the nodes and elements of `other`, fusing each `(self_node,
    /// other_node)` pair in `joins`. Ports of `other` are not copied; the
    /// returned map translates `other` node indices into this netlist so the
    /// caller can re-add the ports it wants to keep.
    pub fn absorb(&mut self, other: &Netlist<T>, joins: &[(usize, usize)]) -> Vec<usize> {
        let mut map = vec![usize::MAX; other.num_nodes];
        for &(here, there) in joins {
            map[there] = here;
        }
        for (i, name) in other.names.iter().enumerate() {
            if map[i] == usize::MAX {
                map[i] = self.add_node(name.clone());
            }
        }
        let remap = |n: Node| match n {
            Node::Ground => Node::Ground,
            Node::N(i) => Node::N(map[i]),
        };
        for e in &other.elements {
            self.add_element(e.kind, e.value, remap(e.a), remap(e.b));
        }
        map
    }
}

impl<T: Scalar> Default for Netlist<T> {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_rejects_nonpositive_values() {
        let mut n = Netlist::<f64>::new();
        let a = n.add_node("a");
        n.add_element(ElementKind::Resistor, -1.0, Node::N(a), Node::Ground);
        assert!(n.validate().is_err());
    }

    #[test]
    fn validate_rejects_floating_island() {
        let mut n = Netlist::<f64>::new();
        let a = n.add_node("a");
        let b = n.add_node("b");
        let c = n.add_node("c");
        n.add_element(ElementKind::Resistor, 50.0, Node::N(a), Node::Ground);
        n.add_element(ElementKind::Capacitor, 1e-12, Node::N(b), Node::N(c));
        n.add_port(a, 50.0);
        assert!(n.validate().is_err());
    }

    #[test]
    fn validate_accepts_port_terminated_node() {
        // A bare through: the port termination itself provides the ground
        // path.
        let mut n = Netlist::<f64>::new();
        let a = n.add_node("a");
        let b = n.add_node("b");
        n.add_element(ElementKind::Resistor, 50.0, Node::N(a), Node::N(b));
        n.add_port(a, 50.0);
        n.add_port(b, 50.0);
        assert!(n.validate().is_ok());
    }

    #[test]
    fn absorb_fuses_nodes_and_remaps() {
        let mut a = Netlist::<f64>::new();
        let n0 = a.add_node("x");
        a.add_element(ElementKind::Resistor, 1.0, Node::N(n0), Node::Ground);
        let mut b = Netlist::<f64>::new();
        let m0 = b.add_node("y0");
        let m1 = b.add_node("y1");
        b.add_element(ElementKind::Capacitor, 1e-12, Node::N(m0), Node::N(m1));
        let map = a.absorb(&b, &[(n0, m0)]);
        assert_eq!(map[m0], n0);
        assert_eq!(a.num_nodes, 2);
        assert_eq!(a.elements.len(), 2);
    }
}
