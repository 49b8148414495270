use serde::Serialize;

/// Known estimates for the maximal number `H(m, n)` of hyperelliptic limit
/// cycles over all type `(m, n)` systems. `upper = None` means no finite
/// upper bound is known for the cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub lower: usize,
    pub upper: Option<usize>,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Bounds {
    fn new(lower: usize, upper: Option<usize>, note: Option<&str>) -> Self {
        Bounds {
            lower,
            upper,
            exact: upper == Some(lower),
            note: note.map(str::to_string),
        }
    }

    fn zero(note: &str) -> Self {
        Bounds::new(0, Some(0), Some(note))
    }

    /// Whether `count` cycles are compatible with the upper bound.
    pub fn admits(&self, count: usize) -> bool {
        self.upper.is_none_or(|u| count <= u)
    }
}

pub fn bounds(m: usize, n: usize) -> Bounds {
    if m <= 1 {
        return Bounds::zero("types (0, n) and (1, n) have no algebraic limit cycles");
    }
    if n <= m {
        return Bounds::zero(
            "no hyperelliptic limit cycles for n <= m, assuming f g (f/g)' is not identically zero",
        );
    }
    if n == m + 1 {
        return Bounds::zero("type (m, m+1) has no algebraic limit cycles");
    }
    if (m, n) == (2, 4) {
        return Bounds::zero("type (2, 4) has no algebraic limit cycles");
    }
    if (m, n) == (3, 5) {
        return Bounds::zero("type (3, 5) has no hyperelliptic limit cycles");
    }
    let knee = (4 * m + 2) / 3;
    let lower = if n <= knee {
        n - m - 1
    } else if n <= 2 * m {
        (n - 1) / 4
    } else {
        m / 2
    };
    let mut note = None;
    let upper = if n == 2 * m + 1 {
        note = Some("no upper bound is known for n = 2m + 1");
        None
    } else if n > 2 * m + 1 {
        Some(m / 2)
    } else if m >= 4 && n >= 2 * m - 1 {
        Some((n - 1) / 4)
    } else if m >= 4 {
        Some((n + 1) / 4)
    } else {
        note = Some("upper estimate only stated for m >= 4");
        None
    };
    if m < 4 && n > knee && n <= 2 * m {
        note = Some("lower estimate from the existence results for type (m, 2m), m >= 3");
    }
    Bounds::new(lower, upper, note)
}
