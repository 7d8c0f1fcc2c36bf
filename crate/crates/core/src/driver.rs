use crate::cost::Cost;
use crate::dovibex::{dovibex, dovibex_enhanced, DovParams};
use crate::search::{ibex_enhanced, ibex_simple, IbexParams};
use crate::query::{BudgetedQuery, SearchReport};

/// Which budgeted driver runs the queries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Driver {
    Ibex,
    IbexEnhanced(IbexParams),
    Dov,
    DovEnhanced(DovParams),
}

impl Default for Driver {
    fn default() -> Self {
        Driver::IbexEnhanced(IbexParams::default())
    }
}

impl Driver {
    pub fn run<Q: BudgetedQuery>(&self, query: &mut Q, c_min: Cost) -> SearchReport<Q::State> {
        match *self {
            Driver::Ibex => ibex_simple(query, c_min),
            Driver::IbexEnhanced(p) => ibex_enhanced(query, c_min, p),
            Driver::Dov => dovibex(query, c_min),
            Driver::DovEnhanced(p) => dovibex_enhanced(query, c_min, p),
        }
    }
}
