// Tree view: the declares hierarchy as a nested list, the navigation shape
// API-reference readers already know. Clicking an item reveals (expands
// ancestors) and selects the node in the diagram.

export interface TreeCallbacks {
  onReveal(id: string): void;
}

export class TreeView {
  readonly root: HTMLElement;
  private collapsed = new Set<string>();
  private names: Record<string, string> = {};
  private childIndex = new Map<string, string[]>();
  private roots: string[] = [];
  private selection: string | null = null;

  constructor(
    private readonly doc: Document,
    host: HTMLElement,
    private readonly callbacks: TreeCallbacks,
  ) {
    this.root = doc.createElement("div");
    this.root.id = "treeview";
    host.appendChild(this.root);
  }

  setData(
    names: Record<string, string>,
    declaresEdges: Array<[string, string]>,
  ): void {
    this.names = names;
    this.childIndex = new Map();
    const hasParent = new Set<string>();
    for (const id of Object.keys(names)) this.childIndex.set(id, []);
    for (const [parent, child] of declaresEdges) {
      this.childIndex.get(parent)?.push(child);
      hasParent.add(child);
    }
    for (const kids of this.childIndex.values()) kids.sort();
    this.roots = Object.keys(names)
      .filter((id) => !hasParent.has(id))
      .sort();
    // deeper levels start folded
    this.collapsed = new Set(
      [...this.childIndex.entries()]
        .filter(([id, kids]) => kids.length && !this.roots.includes(id))
        .map(([id]) => id),
    );
    this.render();
  }

  setSelection(id: string | null): void {
    this.selection = id;
    if (id) {
      // unfold the chain so the selected item is on screen
      const parentOf = new Map<string, string>();
      for (const [parent, kids] of this.childIndex.entries()) {
        for (const kid of kids) parentOf.set(kid, parent);
      }
      let current: string | undefined = id;
      while (current) {
        this.collapsed.delete(current);
        current = parentOf.get(current);
      }
    }
    this.render();
  }

  private render(): void {
    this.root.innerHTML = "";
    const list = this.buildList(this.roots);
    if (list) this.root.appendChild(list);
  }

  private buildList(ids: string[]): HTMLElement | null {
    if (!ids.length) return null;
    const ul = this.doc.createElement("ul");
    ul.className = "tree-level";
    for (const id of ids) {
      const li = this.doc.createElement("li");
      li.className = "tree-item";
      li.dataset.id = id;
      const kids = this.childIndex.get(id) ?? [];
      if (kids.length) {
        const toggle = this.doc.createElement("span");
        toggle.className = "tree-toggle";
        toggle.textContent = this.collapsed.has(id) ? "▸" : "▾";
        toggle.addEventListener("click", (event) => {
          event.stopPropagation();
          if (this.collapsed.has(id)) this.collapsed.delete(id);
          else this.collapsed.add(id);
          this.render();
        });
        li.appendChild(toggle);
      }
      const label = this.doc.createElement("span");
      label.className =
        "tree-label" + (this.selection === id ? " selected" : "");
      label.textContent = this.names[id] ?? id;
      label.addEventListener("click", () => this.callbacks.onReveal(id));
      li.appendChild(label);
      if (kids.length && !this.collapsed.has(id)) {
        const sub = this.buildList(kids);
        if (sub) li.appendChild(sub);
      }
      ul.appendChild(li);
    }
    return ul;
  }
}
