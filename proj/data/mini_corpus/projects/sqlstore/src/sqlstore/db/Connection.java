package sqlstore.db;

public class Connection {
    public static final int DEFAULT_PORT = 5432;

    private final String url;
    private boolean open;

    public Connection(String url) {
        this.url = url;
        this.open = true;
    }

    public void execute(String statement) {
        if (!open) {
            throw new IllegalStateException("connection closed");
        }
    }

    public void close() {
        open = false;
    }
}
