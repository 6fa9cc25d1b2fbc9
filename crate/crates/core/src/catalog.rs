//! Named bifunctions with known behaviour, sampled on `[−2, 2]`.

use crate::bifn::BifunctionTable;
use crate::error::Result;
use crate::extgrid::{Grid, SubInterval};

/// How the table is generated from closed forms.
#[derive(Debug, Clone, Copy)]
pub enum Definition {
    /// `F(x, y) = f(y) − f(x)`.
    Skew(fn(f64) -> f64),
    General(fn(f64, f64) -> f64),
}

#[derive(Debug, Clone, Copy)]
pub struct CatalogItem {
    pub name: &'static str,
    pub summary: &'static str,
    pub definition: Definition,
    /// The same bifunction in the expression grammar of the CLI.
    pub expression: &'static str,
    /// Endpoints of `C`.
    pub domain: (f64, f64),
}

pub const GRID_BOUNDS: (f64, f64) = (-2.0, 2.0);

pub const AFFINE_SLOPE: f64 = 0.7;

pub const ITEMS: [CatalogItem; 6] = [
    CatalogItem {
        name: "skew-quadratic",
        summary: "f(y) - f(x) with f(x) = x^2/2",
        definition: Definition::Skew(|x| 0.5 * x * x),
        expression: "0.5*x^2",
        domain: GRID_BOUNDS,
    },
    CatalogItem {
        name: "skew-abs",
        summary: "f(y) - f(x) with f(x) = |x|",
        definition: Definition::Skew(f64::abs),
        expression: "abs(x)",
        domain: GRID_BOUNDS,
    },
    CatalogItem {
        name: "affine-field",
        summary: "b(y - x) with b = 0.7",
        definition: Definition::General(|x, y| AFFINE_SLOPE * (y - x)),
        expression: "0.7*(y-x)",
        domain: GRID_BOUNDS,
    },
    CatalogItem {
        name: "saddle-linear",
        summary: "x(y - x) on C = [-1, 1]",
        definition: Definition::General(|x, y| x * (y - x)),
        expression: "x*(y-x)",
        domain: (-1.0, 1.0),
    },
    CatalogItem {
        name: "neg-distance",
        summary: "-|y - x| on C = [0, 1]",
        definition: Definition::General(|x, y| -(y - x).abs()),
        expression: "-abs(y-x)",
        domain: (0.0, 1.0),
    },
    CatalogItem {
        name: "nonmono-quadratic",
        summary: "(y - x) + (y - x)^2 on C = [0, 1]",
        definition: Definition::General(|x, y| (y - x) + (y - x) * (y - x)),
        expression: "(y-x)+(y-x)^2",
        domain: (0.0, 1.0),
    },
];

pub fn find(name: &str) -> Option<&'static CatalogItem> {
    ITEMS.iter().find(|i| i.name == name)
}

impl CatalogItem {
    pub fn is_skew(&self) -> bool {
        matches!(self.definition, Definition::Skew(_))
    }

    /// Node range of `C` on `grid`.
    pub fn domain_on(&self, grid: &Grid) -> Result<SubInterval> {
        let locate = |x: f64| {
            grid.index_of(x, 1e-9).ok_or_else(|| crate::Error::InvalidGrid(format!("{x} is not a node of the grid")))
        };
        SubInterval::new(locate(self.domain.0)?, locate(self.domain.1)?, grid)
    }

    pub fn table(&self, grid: &Grid) -> Result<BifunctionTable> {
        let c = self.domain_on(grid)?;
        match self.definition {
            Definition::Skew(f) => BifunctionTable::skew(*grid, c, f),
            Definition::General(f) => BifunctionTable::sample(*grid, c, f),
        }
    }

    /// Standard grid with `n` nodes on `[−2, 2]`.
    pub fn standard_grid(n: usize) -> Result<Grid> {
        Grid::new(GRID_BOUNDS.0, GRID_BOUNDS.1, n)
    }
}
