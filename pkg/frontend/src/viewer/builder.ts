// Filter builder: typed clause rows with property autocompletion and value
// completion for limited-domain properties. Produces the canonical builder
// text that travels through the session API.

import {
  OPERATORS_BY_TYPE,
  PROPERTY_TYPES,
  serializeClauses,
  valueDomain,
  type Clause,
  type ClauseValue,
} from "../core/filters.js";

interface Row {
  root: HTMLElement;
  property: HTMLInputElement;
  operator: HTMLSelectElement;
  valueHolder: HTMLElement;
}

export class FilterBuilder {
  readonly root: HTMLElement;
  private readonly rows: Row[] = [];
  private readonly rowContainer: HTMLElement;

  constructor(private readonly doc: Document) {
    this.root = doc.createElement("div");
    this.root.className = "filter-builder";

    const datalist = doc.createElement("datalist");
    datalist.id = "helgraph-properties";
    for (const property of Object.keys(PROPERTY_TYPES)) {
      const option = doc.createElement("option");
      option.value = property;
      datalist.appendChild(option);
    }
    this.root.appendChild(datalist);

    this.rowContainer = doc.createElement("div");
    this.rowContainer.className = "builder-rows";
    this.root.appendChild(this.rowContainer);

    const add = doc.createElement("button");
    add.type = "button";
    add.className = "builder-add";
    add.textContent = "+ clause";
    add.addEventListener("click", () => this.addRow());
    this.root.appendChild(add);

    this.addRow();
  }

  get clauseCount(): number {
    return this.rows.length;
  }

  addRow(): number {
    const doc = this.doc;
    const row = doc.createElement("div");
    row.className = "builder-row";

    const property = doc.createElement("input");
    property.className = "builder-property";
    property.setAttribute("list", "helgraph-properties");
    property.placeholder = "property";

    const operator = doc.createElement("select");
    operator.className = "builder-operator";

    const valueHolder = doc.createElement("span");
    valueHolder.className = "builder-value-holder";

    const remove = doc.createElement("button");
    remove.type = "button";
    remove.className = "builder-remove";
    remove.textContent = "×";

    row.append(property, operator, valueHolder, remove);
    this.rowContainer.appendChild(row);
    const entry: Row = { root: row, property, operator, valueHolder };
    this.rows.push(entry);

    property.addEventListener("change", () => this.syncRow(entry));
    remove.addEventListener("click", () => {
      if (this.rows.length === 1) return; // keep at least one row
      this.rows.splice(this.rows.indexOf(entry), 1);
      row.remove();
    });
    this.syncRow(entry);
    return this.rows.length - 1;
  }

  /** Rebuild operator choices and the value editor for the row's property. */
  private syncRow(row: Row): void {
    const valueType = PROPERTY_TYPES[row.property.value] ?? "string";
    const previous = row.operator.value;
    row.operator.innerHTML = "";
    for (const op of OPERATORS_BY_TYPE[valueType]) {
      const option = this.doc.createElement("option");
      option.value = op;
      option.textContent = op;
      row.operator.appendChild(option);
    }
    if (OPERATORS_BY_TYPE[valueType].includes(previous)) {
      row.operator.value = previous;
    }

    row.valueHolder.innerHTML = "";
    const domain = valueDomain(row.property.value);
    if (domain) {
      const select = this.doc.createElement("select");
      select.className = "builder-value";
      for (const candidate of domain) {
        const option = this.doc.createElement("option");
        option.value = candidate;
        option.textContent = candidate;
        select.appendChild(option);
      }
      row.valueHolder.appendChild(select);
    } else {
      const input = this.doc.createElement("input");
      input.className = "builder-value";
      input.placeholder = valueType === "integer" ? "number" : "value";
      row.valueHolder.appendChild(input);
    }
  }

  /** Programmatic setter (also used by tests). */
  setClause(index: number, property: string, operator: string, value: string): void {
    while (this.rows.length <= index) this.addRow();
    const row = this.rows[index];
    row.property.value = property;
    this.syncRow(row);
    row.operator.value = operator;
    const editor = row.valueHolder.querySelector(
      ".builder-value",
    ) as HTMLInputElement | HTMLSelectElement;
    editor.value = value;
  }

  readClauses(): Clause[] {
    const clauses: Clause[] = [];
    for (const row of this.rows) {
      const property = row.property.value.trim();
      if (!property) continue;
      const valueType = PROPERTY_TYPES[property];
      const editor = row.valueHolder.querySelector(
        ".builder-value",
      ) as HTMLInputElement | HTMLSelectElement | null;
      const raw = editor?.value ?? "";
      let value: ClauseValue = raw;
      if (valueType === "integer") value = parseInt(raw, 10);
      else if (valueType === "boolean") value = raw === "true";
      else if (row.operator.value === "oneOf") {
        value = raw.split(",").map((part) => part.trim()).filter(Boolean);
      }
      clauses.push({ property, operator: row.operator.value, value });
    }
    return clauses;
  }

  serialized(): string {
    return serializeClauses(this.readClauses());
  }
}
