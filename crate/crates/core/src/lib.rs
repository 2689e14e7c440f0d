pub mod exactalg;
pub mod hypersurface;
pub mod kreck_su;
pub mod quadform;
pub mod pham;
pub mod jtheory;
pub mod steenrod_ext;
pub mod report;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/hypersurface.md")]
    mod hypersurface {}
    #[doc = include_str!("../../../book/src/kreck-su.md")]
    mod kreck_su {}
    #[doc = include_str!("../../../book/src/quadratic-forms.md")]
    mod quadratic_forms {}
    #[doc = include_str!("../../../book/src/pham.md")]
    mod pham {}
    #[doc = include_str!("../../../book/src/jtheory.md")]
    mod jtheory {}
    #[doc = include_str!("../../../book/src/steenrod.md")]
    mod steenrod {}
    #[doc = include_str!("../../../book/src/reports.md")]
    mod reports {}
}
