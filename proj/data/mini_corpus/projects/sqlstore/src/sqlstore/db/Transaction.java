package sqlstore.db;

import static sqlstore.db.Connection.DEFAULT_PORT;

public class Transaction {
    private final Connection connection;
    private boolean committed;

    public Transaction(Connection connection) {
        this.connection = connection;
    }

    public void commit() {
        connection.execute("COMMIT");
        committed = true;
    }

    public void rollback() {
        connection.execute("ROLLBACK");
    }

    public int port() {
        return DEFAULT_PORT;
    }
}
