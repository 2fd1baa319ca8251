use crate::syntax::{Formula, ParamTable, Sequent, Term, Var};

use super::{Axiom, NodeId, Proof, ProofNode, Rule};

/// Builds proofs bottom-up, computing each conclusion from the premises.
/// Nodes are labelled `n1`, `n2`, … in creation order.
#[derive(Debug, Default)]
pub struct ProofBuilder {
    proof: Proof,
}

impl ProofBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_params(params: ParamTable) -> Self {
        ProofBuilder {
            proof: Proof::new(params),
        }
    }

    pub fn declare_vars(&mut self, vars: &[&str]) -> &mut Self {
        self.proof.declare_vars(vars.iter().map(|v| Var::new(v)));
        self
    }

    pub fn conclusion(&self, id: NodeId) -> &Sequent {
        &self.proof.node(id).conclusion
    }

    fn push(&mut self, rule: Rule, premises: Vec<NodeId>, conclusion: Sequent) -> NodeId {
        let label = format!("n{}", self.proof.len() + 1);
        self.proof.push(ProofNode {
            label,
            rule,
            premises,
            conclusion,
        })
    }

    /// `side, ¬a, a`.
    pub fn log(&mut self, a: Formula, side: impl IntoIterator<Item = Formula>) -> NodeId {
        let conc: Sequent = side.into_iter().chain([a.negate(), a.clone()]).collect();
        self.push(Rule::Log { formula: a }, vec![], conc)
    }

    pub fn axiom(&mut self, ax: Axiom, side: impl IntoIterator<Item = Formula>) -> NodeId {
        let conc: Sequent = side.into_iter().chain([ax.instance()]).collect();
        self.push(Rule::Axiom(ax), vec![], conc)
    }

    fn single(&mut self, rule: Rule, p: NodeId) -> NodeId {
        let main = rule.main().cloned().expect("rule with a main formula");
        let added = rule.premise_formulas(0).expect("main formula fits the rule");
        let conc = added
            .iter()
            .fold(self.conclusion(p).clone(), |s, a| s.without(a))
            .with(main);
        self.push(rule, vec![p], conc)
    }

    fn double(&mut self, rule: Rule, p0: NodeId, p1: NodeId) -> NodeId {
        let strip = |b: &Self, i: usize, p: NodeId| {
            let added = rule.premise_formulas(i).expect("main formula fits the rule");
            added.iter().fold(b.conclusion(p).clone(), |s, a| s.without(a))
        };
        let mut conc = strip(self, 0, p0).union(&strip(self, 1, p1));
        if let Some(main) = rule.main() {
            conc = conc.with(main.clone());
        }
        self.push(rule, vec![p0, p1], conc)
    }

    pub fn or(&mut self, p: NodeId, main: Formula) -> NodeId {
        self.single(Rule::Or { main }, p)
    }

    pub fn and(&mut self, p0: NodeId, p1: NodeId, main: Formula) -> NodeId {
        self.double(Rule::And { main }, p0, p1)
    }

    pub fn bex(&mut self, p_mem: NodeId, p_body: NodeId, main: Formula, term: Term) -> NodeId {
        self.double(Rule::BEx { main, term }, p_mem, p_body)
    }

    pub fn ball(&mut self, p: NodeId, main: Formula, eigen: &str) -> NodeId {
        self.single(
            Rule::BAll {
                main,
                eigen: Var::new(eigen),
            },
            p,
        )
    }

    pub fn ex(&mut self, p: NodeId, main: Formula, term: Term) -> NodeId {
        self.single(Rule::Ex { main, term }, p)
    }

    pub fn all(&mut self, p: NodeId, main: Formula, eigen: &str) -> NodeId {
        self.single(
            Rule::All {
                main,
                eigen: Var::new(eigen),
            },
            p,
        )
    }

    /// Cut on `c`: `p0` proves `Γ, ¬c` and `p1` proves `c, Γ`.
    pub fn cut(&mut self, p0: NodeId, p1: NodeId, c: Formula) -> NodeId {
        self.double(Rule::Cut { formula: c }, p0, p1)
    }

    pub fn finish(self) -> Proof {
        self.proof
    }
}
