//! Branch transplantation between black vertices.

use super::{Color, PlaneTree};
use crate::{Error, Result};

/// Moves the branch hanging off `donor` through its neighbor `branch_root`
/// to `receiver`, inserting it at cyclic position `slot` of the receiver's
/// neighbor list.
///
/// Both `donor` and `receiver` must be black, distinct, and the detached
/// branch must not contain `receiver` (otherwise the result would be
/// disconnected). The move preserves the valency type: white valencies are
/// untouched, only the two black valencies change.
pub fn branch_transplant(
    tree: &PlaneTree,
    donor: usize,
    branch_root: usize,
    receiver: usize,
    slot: usize,
) -> Result<PlaneTree> {
    let n = tree.vertex_count();
    if donor >= n || receiver >= n || branch_root >= n {
        return Err(Error::Validation("vertex id out of range".into()));
    }
    if tree.color(donor) != Color::Black || tree.color(receiver) != Color::Black {
        return Err(Error::Validation("donor and receiver must be black".into()));
    }
    if donor == receiver {
        return Err(Error::Validation("donor and receiver must differ".into()));
    }
    if tree.valency(donor) == 1 {
        return Err(Error::Validation("donor of valency 1 has no branch to spare".into()));
    }
    if !tree.neighbors(donor).contains(&branch_root) {
        return Err(Error::Validation(format!("{branch_root} is not a neighbor of the donor")));
    }
    // The branch is the component of branch_root after deleting the donor.
    let mut in_branch = vec![false; n];
    in_branch[branch_root] = true;
    let mut stack = vec![branch_root];
    while let Some(v) = stack.pop() {
        for &u in tree.neighbors(v) {
            if u != donor && !in_branch[u] {
                in_branch[u] = true;
                stack.push(u);
            }
        }
    }
    if in_branch[receiver] {
        return Err(Error::Validation("branch contains the receiver".into()));
    }
    if slot > tree.valency(receiver) {
        return Err(Error::Validation(format!(
            "slot {slot} exceeds receiver valency {}",
            tree.valency(receiver)
        )));
    }

    let colors = tree.colors().to_vec();
    let mut adj: Vec<Vec<usize>> = (0..n).map(|v| tree.neighbors(v).to_vec()).collect();
    adj[donor].retain(|&u| u != branch_root);
    adj[receiver].insert(slot, branch_root);
    for entry in adj[branch_root].iter_mut() {
        if *entry == donor {
            *entry = receiver;
        }
    }
    PlaneTree::new(colors, adj)
}
