/** Minimal virtual nodes: renderers stay pure and testable in node, a
 * browser mounts the same trees into real DOM. */

export interface VNode {
  tag: string;
  attrs: Record<string, string>;
  children: Array<VNode | string>;
}

export function h(
  tag: string,
  attrs: Record<string, string> = {},
  ...children: Array<VNode | string>
): VNode {
  return { tag, attrs, children };
}

/** Depth-first search for nodes matching a predicate. */
export function findAll(root: VNode, match: (node: VNode) => boolean): VNode[] {
  const found: VNode[] = [];
  const walk = (node: VNode) => {
    if (match(node)) {
      found.push(node);
    }
    for (const child of node.children) {
      if (typeof child !== "string") {
        walk(child);
      }
    }
  };
  walk(root);
  return found;
}

export function textOf(node: VNode): string {
  return node.children
    .map((child) => (typeof child === "string" ? child : textOf(child)))
    .join("");
}

const SVG_TAGS = new Set(["svg", "g", "circle", "rect", "line", "text", "path", "title"]);
const SVG_NS = "http://www.w3.org/2000/svg";

export function mount(node: VNode, doc: Document): Element {
  const element = SVG_TAGS.has(node.tag)
    ? doc.createElementNS(SVG_NS, node.tag)
    : doc.createElement(node.tag);
  for (const [name, value] of Object.entries(node.attrs)) {
    element.setAttribute(name, value);
  }
  for (const child of node.children) {
    if (typeof child === "string") {
      element.appendChild(doc.createTextNode(child));
    } else {
      element.appendChild(mount(child, doc));
    }
  }
  return element;
}
