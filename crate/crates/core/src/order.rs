use crate::logic::Var;

/// Which variable to resolve on first.
///
/// Variables in the explicit priority list come first, in list order; the
/// rest follow in ascending id order. Elimination removes variables in
/// this order; linear resolution treats the first variable as the maximum
/// of its A-ordering, so it is resolved on first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VarOrder {
    priority: Vec<Var>,
}

impl VarOrder {
    /// Ascending variable id.
    pub fn ascending() -> VarOrder {
        VarOrder::default()
    }

    pub fn with_priority(priority: impl IntoIterator<Item = Var>) -> VarOrder {
        let mut seen = Vec::new();
        for v in priority {
            if !seen.contains(&v) {
                seen.push(v);
            }
        }
        VarOrder { priority: seen }
    }

    fn key(&self, var: Var) -> (usize, Var) {
        let pos = self.priority.iter().position(|&p| p == var);
        (pos.unwrap_or(self.priority.len()), var)
    }

    /// `vars` sorted first to last.
    pub fn sorted(&self, vars: impl IntoIterator<Item = Var>) -> Vec<Var> {
        let mut out: Vec<Var> = vars.into_iter().collect();
        out.sort_by_key(|&v| self.key(v));
        out.dedup();
        out
    }

    /// The variable of `vars` that comes first.
    pub fn first(&self, vars: impl IntoIterator<Item = Var>) -> Option<Var> {
        vars.into_iter().min_by_key(|&v| self.key(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(s: &str) -> Vec<Var> {
        s.chars().map(Var::from_char).collect()
    }

    #[test]
    fn default_is_ascending() {
        assert_eq!(VarOrder::ascending().sorted(vars("dbca")), vars("abcd"));
        assert_eq!(VarOrder::ascending().first(vars("db")), Some(Var::from_char('b')));
        assert_eq!(VarOrder::ascending().first(vars("")), None);
    }

    #[test]
    fn priority_comes_first() {
        let order = VarOrder::with_priority(vars("cac"));
        assert_eq!(order.sorted(vars("abcd")), vars("cabd"));
        assert_eq!(order.first(vars("bd")), Some(Var::from_char('b')));
    }
}
