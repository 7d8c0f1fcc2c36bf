use crate::cost::Cost;

use super::SearchDomain;

/// A graph family on which A*, B and B' re-expand quadratically many states.
///
/// States, encoded as integers: the start `s` (0), the tops `t_1..t_d`
/// (`1..=d`), the hub `m` (`d+1`), the bottom chain `b_1..b_{d-1}`
/// (`d+2..=2d`) and the goal `g` (`2d+1`). Edges: `s -> t_i` costs 1,
/// `t_i -> m` costs `d - i + 1`, `m -> b_1` and `b_j -> b_{j+1}` cost 1 and
/// `b_{d-1} -> g` costs `d - 1`. Only the tops have a heuristic:
/// `h(t_i) = d + i - 1`. The optimal cost is `2d`.
///
/// `s` lists its successors `t_d` first, down to `t_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mero {
    d: u32,
}

impl Mero {
    #[track_caller]
    pub fn new(d: u32) -> Mero {
        assert!(d >= 2, "Mero graph needs d >= 2");
        Mero { d }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn start(&self) -> u32 {
        0
    }

    pub fn top(&self, i: u32) -> u32 {
        i
    }

    pub fn hub(&self) -> u32 {
        self.d + 1
    }

    pub fn bottom(&self, j: u32) -> u32 {
        self.d + 1 + j
    }

    pub fn goal(&self) -> u32 {
        2 * self.d + 1
    }

    pub fn num_states(&self) -> usize {
        2 * self.d as usize + 2
    }

    pub fn optimal_cost(&self) -> Cost {
        Cost::from(2 * self.d)
    }
}

impl SearchDomain for Mero {
    type State = u32;

    fn initial_state(&self) -> u32 {
        0
    }

    fn successors(&self, &s: &u32, mut emit: impl FnMut(u32, Cost)) {
        let d = self.d;
        if s == 0 {
            for i in (1..=d).rev() {
                emit(i, Cost::ONE);
            }
        } else if s <= d {
            emit(self.hub(), Cost::from(d - s + 1));
        } else if s < 2 * d {
            emit(s + 1, Cost::ONE);
        } else if s == 2 * d {
            emit(self.goal(), Cost::from(d - 1));
        }
    }

    fn heuristic(&self, &s: &u32) -> Cost {
        if (1..=self.d).contains(&s) {
            Cost::from(self.d + s - 1)
        } else {
            Cost::ZERO
        }
    }

    fn is_goal(&self, &s: &u32) -> bool {
        s == self.goal()
    }
}
