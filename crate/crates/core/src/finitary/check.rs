use std::fmt;

use crate::syntax::{Formula, Sequent};

use super::{Proof, ProofNode, Rule};

/// A failed side condition at a proof node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub node: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node {}: {}", self.node, self.message)
    }
}

/// Checks every node and returns all diagnostics, in node order.
pub fn diagnostics(proof: &Proof, n: u32) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if n < 2 {
        out.push(Diagnostic {
            node: "-".into(),
            message: format!("N must be at least 2, got {n}"),
        });
        return out;
    }
    let Some(root) = proof.root() else {
        out.push(Diagnostic {
            node: "-".into(),
            message: "empty proof".into(),
        });
        return out;
    };
    for node in proof.nodes() {
        if let Err(message) = check_node(proof, node, n) {
            out.push(Diagnostic {
                node: node.label.clone(),
                message,
            });
        }
    }
    if let Some(vars) = proof.declared_vars() {
        let end = &proof.node(root).conclusion;
        let stray: Vec<String> = end
            .free_vars()
            .into_iter()
            .filter(|v| !vars.contains(v))
            .map(|v| v.to_string())
            .collect();
        if !stray.is_empty() {
            out.push(Diagnostic {
                node: proof.node(root).label.clone(),
                message: format!("end sequent has undeclared free variables {}", stray.join(" ")),
            });
        }
    }
    out
}

/// Checks the proof and reports the first failing node.
pub fn check_proof(proof: &Proof, n: u32) -> Result<(), Diagnostic> {
    match diagnostics(proof, n).into_iter().next() {
        Some(d) => Err(d),
        None => Ok(()),
    }
}

fn check_node(proof: &Proof, node: &ProofNode, n: u32) -> Result<(), String> {
    let rule = &node.rule;
    let conc = &node.conclusion;
    if node.premises.len() != rule.arity() {
        return Err(format!(
            "{} takes {} premises, got {}",
            rule.name(),
            rule.arity(),
            node.premises.len()
        ));
    }
    match rule {
        Rule::Log { formula } => {
            if conc.contains(formula) && conc.contains(&formula.negate()) {
                Ok(())
            } else {
                Err(format!("logical axiom needs both {formula} and its negation"))
            }
        }
        Rule::Axiom(ax) => {
            ax.validate(n)?;
            let inst = ax.instance();
            if conc.contains(&inst) {
                Ok(())
            } else {
                Err(format!("{} instance {inst} is not in the conclusion", ax.name()))
            }
        }
        _ => check_inference(proof, node),
    }
}

fn check_inference(proof: &Proof, node: &ProofNode) -> Result<(), String> {
    let rule = &node.rule;
    let conc = &node.conclusion;
    if let Some(main) = rule.main() {
        if !conc.contains(main) {
            return Err(format!("main formula {main} is not in the conclusion"));
        }
    }
    if let Some(y) = rule.eigenvariable() {
        if conc.free_vars().contains(y) {
            return Err(format!("eigenvariable {y} occurs free in the conclusion"));
        }
    }
    // The cut formula may be anything; the main formula must be removable.
    let kept: Sequent = match rule.main() {
        Some(main) => conc.without(main),
        None => conc.clone(),
    };
    for (i, &p) in node.premises.iter().enumerate() {
        let Some(added) = rule.premise_formulas(i) else {
            return Err(format!("main formula does not match rule {}", rule.name()));
        };
        let prem = &proof.node(p).conclusion;
        let allowed: Sequent = added.iter().cloned().fold(conc.clone(), |s, a| s.with(a));
        if let Some(extra) = prem.iter().find(|a| !allowed.contains(a)) {
            return Err(format!(
                "premise {} has {extra}, which the rule does not introduce",
                proof.node(p).label
            ));
        }
        if let Some(missing) = kept.iter().find(|a| !prem.contains(a)) {
            return Err(format!("premise {} lacks side formula {missing}", proof.node(p).label));
        }
        if let Rule::Cut { formula } = rule {
            let want: Formula = if i == 0 { formula.negate() } else { formula.clone() };
            if !prem.contains(&want) {
                return Err(format!(
                    "wrong cut formula: premise {} lacks {want}",
                    proof.node(p).label
                ));
            }
        }
    }
    Ok(())
}
