use std::collections::BTreeSet;

use crate::syntax::{Formula, Node, ParamTable, Sequent, Term, Var};

use super::Axiom;

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `Γ, ¬A, A`.
    Log {
        formula: Formula,
    },
    Axiom(Axiom),
    Or {
        main: Formula,
    },
    And {
        main: Formula,
    },
    /// From `Γ, t∈s` and `Γ, B(t)` infer `Γ, ∃y∈s B(y)`.
    BEx {
        main: Formula,
        term: Term,
    },
    /// From `Γ, y∉s, B(y)` infer `Γ, ∀y∈s B(y)`, `y` not free below.
    BAll {
        main: Formula,
        eigen: Var,
    },
    Ex {
        main: Formula,
        term: Term,
    },
    All {
        main: Formula,
        eigen: Var,
    },
    Cut {
        formula: Formula,
    },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Log { .. } => "log",
            Rule::Axiom(a) => a.name(),
            Rule::Or { .. } => "or",
            Rule::And { .. } => "and",
            Rule::BEx { .. } => "bex",
            Rule::BAll { .. } => "ball",
            Rule::Ex { .. } => "ex",
            Rule::All { .. } => "all",
            Rule::Cut { .. } => "cut",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Rule::Log { .. } | Rule::Axiom(_) => 0,
            Rule::Or { .. } | Rule::BAll { .. } | Rule::Ex { .. } | Rule::All { .. } => 1,
            Rule::And { .. } | Rule::BEx { .. } | Rule::Cut { .. } => 2,
        }
    }

    pub fn main(&self) -> Option<&Formula> {
        match self {
            Rule::Or { main }
            | Rule::And { main }
            | Rule::BEx { main, .. }
            | Rule::BAll { main, .. }
            | Rule::Ex { main, .. }
            | Rule::All { main, .. } => Some(main),
            Rule::Log { .. } | Rule::Axiom(_) | Rule::Cut { .. } => None,
        }
    }

    pub fn eigenvariable(&self) -> Option<&Var> {
        match self {
            Rule::BAll { eigen, .. } | Rule::All { eigen, .. } => Some(eigen),
            _ => None,
        }
    }

    /// The formulas premise `i` may add to the conclusion, or `None` when the
    /// main formula does not have the shape the rule needs.
    pub fn premise_formulas(&self, i: usize) -> Option<Vec<Formula>> {
        let inst = |v: &Var, body: &Formula, t: &Term| body.subst(v, t);
        Some(match (self, self.main().map(Formula::node)) {
            (Rule::Or { .. }, Some(Node::Or(a, b))) => vec![a.clone(), b.clone()],
            (Rule::And { .. }, Some(Node::And(a, b))) => vec![if i == 0 { a.clone() } else { b.clone() }],
            (Rule::BEx { term, .. }, Some(Node::BEx(v, s, body))) => {
                if i == 0 {
                    vec![Formula::mem(term.clone(), s.clone())]
                } else {
                    vec![inst(v, body, term)]
                }
            }
            (Rule::BAll { eigen, .. }, Some(Node::BAll(v, s, body))) => {
                let y = Term::Var(eigen.clone());
                vec![Formula::not_mem(y.clone(), s.clone()), inst(v, body, &y)]
            }
            (Rule::Ex { term, .. }, Some(Node::Ex(v, body))) => vec![inst(v, body, term)],
            (Rule::All { eigen, .. }, Some(Node::All(v, body))) => {
                vec![inst(v, body, &Term::Var(eigen.clone()))]
            }
            (Rule::Cut { formula }, None) => {
                vec![if i == 0 { formula.negate() } else { formula.clone() }]
            }
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofNode {
    pub label: String,
    pub rule: Rule,
    pub premises: Vec<NodeId>,
    pub conclusion: Sequent,
}

/// A finitary proof. Nodes are stored so that premises precede their
/// conclusions; the last node is the root.
#[derive(Clone, Debug, Default)]
pub struct Proof {
    nodes: Vec<ProofNode>,
    vars: Option<BTreeSet<Var>>,
    params: ParamTable,
}

impl Proof {
    pub fn new(params: ParamTable) -> Self {
        Proof {
            params,
            ..Self::default()
        }
    }

    /// Appends a node. Premise ids must refer to nodes already present.
    pub fn push(&mut self, node: ProofNode) -> NodeId {
        assert!(
            node.premises.iter().all(|&p| p < self.nodes.len()),
            "premises of {} must precede it",
            node.label
        );
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn declare_vars(&mut self, vars: impl IntoIterator<Item = Var>) {
        self.vars.get_or_insert_with(BTreeSet::new).extend(vars);
    }

    pub fn declared_vars(&self) -> Option<&BTreeSet<Var>> {
        self.vars.as_ref()
    }

    pub fn params(&self) -> &ParamTable {
        &self.params
    }

    pub fn node(&self, id: NodeId) -> &ProofNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[ProofNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> Option<NodeId> {
        self.nodes.len().checked_sub(1)
    }

    pub fn end_sequent(&self) -> Option<&Sequent> {
        self.root().map(|r| &self.nodes[r].conclusion)
    }

    /// The cut rank m assigned to each node by the embedding: 2·dp(A) for a
    /// logical axiom on A, 1 for theory axioms except foundation (2), one
    /// more than the premises for rules, and above the cut formula's depth
    /// for cuts.
    pub fn embedding_ranks(&self) -> Vec<u32> {
        let mut ranks: Vec<u32> = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            let below = n.premises.iter().map(|&p| ranks[p]).max().unwrap_or(0);
            let m = match &n.rule {
                Rule::Log { formula } => 2 * formula.depth(),
                Rule::Axiom(Axiom::Foundation { .. }) => 2,
                Rule::Axiom(_) => 1,
                Rule::Cut { formula } => below.max(formula.depth()) + 1,
                _ => below + 1,
            };
            ranks.push(m);
        }
        ranks
    }

    pub fn embedding_rank(&self) -> u32 {
        self.embedding_ranks().last().copied().unwrap_or(0)
    }

    /// Set names occurring anywhere in the proof.
    pub fn support(&self) -> BTreeSet<crate::universe::DeskSet> {
        self.nodes.iter().flat_map(|n| n.conclusion.support()).collect()
    }
}
