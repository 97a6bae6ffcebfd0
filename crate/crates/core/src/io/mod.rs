//! Canonical JSON files and SVG rendering.
//!
//! Coordinates are stored as exact rational strings (`"7/3"`), never as
//! floats; output is pretty-printed with a fixed key order, so identical
//! input gives byte-identical files.

mod json;
mod svg;

pub use json::{
    parse_drawing, parse_graph, parse_instance, parse_network, write_drawing, write_gadget,
    write_graph, write_instance, write_network, BottleneckEntry, DrawingFile, GraphFile,
    InstanceFile, NetworkFile, NodeEntry, ParsedInstance, ReportEntry, RoleEntry, RouteEntry,
    SourceEntry, TerminalEntry, FORMAT_VERSION,
};
pub use svg::{render_svg, Figure, SvgOptions};
